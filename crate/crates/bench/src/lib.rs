//! Inputs shared by the benchmarks.

use qsudoku::{construct, generate_mols, select_squares, Construction, ProjectionSpec};

/// Builds the two-square construction for `(m, n)` from generated squares.
pub fn construction(m: usize, n: usize, spec: &ProjectionSpec) -> Construction {
    let a = select_squares(&generate_mols(m).expect("prime power"), 2).expect("two squares");
    let b = select_squares(&generate_mols(n).expect("prime power"), 2).expect("two squares");
    construct(&a, &b, spec).expect("valid construction")
}
