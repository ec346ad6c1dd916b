//! Doubly orthogonal quasi-Sudoku Latin squares, quasi-sliced asymmetric
//! orthogonal arrays, and the sliced space-filling designs built from them.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! 1. [`latin`]: Latin squares and MOLS generators (cyclic and finite-field).
//! 2. [`product`]: direct products `A1 (x) A2` and the quasi-Sudoku row order.
//! 3. [`projection`]: the coordinate and coprime-modular symbol projections and
//!    the blockwise double-orthogonality check.
//! 4. [`oa`]: unstacking into an orthogonal array, slicing, level collapsing,
//!    and exhaustive strength verification.
//! 5. [`sfd`]: relabel / expand / jitter into a sliced Latin hypercube design.
//!
//! [`construction::construct`] runs steps 2-4 in one call and [`io`] holds the
//! file formats. [`fixtures`] embeds the 12x12 worked example.

pub mod construction;
pub mod error;
pub mod fixtures;
pub mod gf;
pub mod io;
pub mod latin;
pub mod oa;
pub mod product;
pub mod projection;
pub mod report;
pub mod sfd;

pub use construction::{construct, select_squares, Construction};
pub use error::{Error, Result};
pub use fixtures::fixture_catalog;
pub use gf::GaloisField;
pub use latin::{are_orthogonal, cyclic_mols, galois_mols, generate_mols, validate_latin, LatinSquare, MolsSet};
pub use oa::{
    collapse_slices, partition_slices, unstack, verify_oa_strength, ColumnProjection, OrthogonalArray, SlicedOA,
};
pub use product::{direct_product, quasi_sudoku_reorder, verify_quasi_sudoku, Pair, ProductSquare, QuasiSudokuSquare};
pub use projection::{
    project_symbol_m, project_symbol_n, superimpose, verify_double_orthogonality, ProjectedOverlay, ProjectionKind,
    ProjectionSpec,
};
pub use report::{ReportItem, VerificationReport};
pub use sfd::{
    build_sfd, expand_levels, plan_relabeling, verify_2d_stratification, verify_design, verify_lhd, ColumnRelabeling,
    SpaceFillingDesign,
};
