//! End-to-end construction: component MOLS to collapsed quasi-sliced array.

use crate::error::{Error, Result};
use crate::latin::{are_orthogonal, LatinSquare, MolsSet};
use crate::oa::{collapse_slices, partition_slices, unstack, verify_oa_strength, OrthogonalArray, SlicedOA};
use crate::product::{direct_product, quasi_sudoku_reorder, verify_quasi_sudoku, ProductSquare, QuasiSudokuSquare};
use crate::projection::{superimpose, verify_double_orthogonality, ProjectedOverlay, ProjectionSpec};
use crate::report::{ReportItem, VerificationReport};

/// Picks `count` squares from a set: the first and last for a pair, otherwise the first `count`.
pub fn select_squares(set: &MolsSet, count: usize) -> Result<Vec<LatinSquare>> {
    if count < 2 || count > set.len() {
        return Err(Error::MalformedArray(format!(
            "cannot take {count} squares from a set of {} (order {})",
            set.len(),
            set.order()
        )));
    }
    if count == 2 {
        let (a, b) = set.first_and_last().expect("set has at least two squares");
        return Ok(vec![a.clone(), b.clone()]);
    }
    Ok(set.squares()[..count].to_vec())
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub spec: ProjectionSpec,
    /// `m_squares[j] (x) n_squares[j]` in direct-product order.
    pub products: Vec<ProductSquare>,
    pub quasi: Vec<QuasiSudokuSquare>,
    /// Projected superimposition of the first two squares.
    pub overlay: ProjectedOverlay,
    pub array: OrthogonalArray,
    pub sliced: SlicedOA,
}

/// Builds `K` product squares from `K` order-`m` and `K` order-`n` squares.
pub fn construct(m_squares: &[LatinSquare], n_squares: &[LatinSquare], spec: &ProjectionSpec) -> Result<Construction> {
    if m_squares.len() != n_squares.len() || m_squares.len() < 2 {
        return Err(Error::MalformedArray(format!(
            "need equally many (>= 2) squares per factor, got {} and {}",
            m_squares.len(),
            n_squares.len()
        )));
    }
    let (m, n) = (m_squares[0].order(), n_squares[0].order());
    if m_squares.len() > 2 && m != n {
        return Err(Error::MalformedArray(
            "more than two product squares are only supported for m = n".into(),
        ));
    }
    if spec.m() != m || spec.n() != n {
        return Err(Error::SpecViolation(format!(
            "spec is for m={} n={}, squares have orders {m} and {n}",
            spec.m(),
            spec.n()
        )));
    }
    let products: Vec<ProductSquare> = m_squares
        .iter()
        .zip(n_squares)
        .map(|(a, b)| direct_product(a, b))
        .collect();
    let quasi: Vec<QuasiSudokuSquare> = products.iter().map(quasi_sudoku_reorder).collect();
    let overlay = superimpose(&quasi[0], &quasi[1], spec)?;
    let array = unstack(&quasi)?;
    let sliced = collapse_slices(&partition_slices(&array, m, n)?, spec)?;
    Ok(Construction {
        spec: *spec,
        products,
        quasi,
        overlay,
        array,
        sliced,
    })
}

impl Construction {
    /// Every check along the pipeline, in pipeline order.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new(format!(
            "construction m={} n={} K={} {}",
            self.spec.m(),
            self.spec.n(),
            self.products.len(),
            self.spec.kind()
        ));
        let latins: Vec<_> = self.products.iter().map(ProductSquare::to_latin).collect();
        for i in 0..latins.len() {
            for j in i + 1..latins.len() {
                let label = format!("products {i},{j} orthogonal");
                report.push(match (&latins[i], &latins[j]) {
                    (Ok(a), Ok(b)) if are_orthogonal(a, b).unwrap_or(false) => ReportItem::pass(label, None),
                    _ => ReportItem::fail(label, vec!["not orthogonal Latin squares".into()]),
                });
            }
        }
        for (i, q) in self.quasi.iter().enumerate() {
            let mut sub = verify_quasi_sudoku(q);
            sub.subject = format!("quasi-Sudoku {i}");
            report.absorb(sub);
        }
        let mut sub = verify_double_orthogonality(&self.overlay);
        sub.subject = "overlay".into();
        report.absorb(sub);
        let mut sub = verify_oa_strength(&self.array, 2);
        sub.subject = "full array".into();
        report.absorb(sub);
        report.absorb(self.sliced.verify());
        report
    }
}
