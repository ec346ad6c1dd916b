//! Orthogonal arrays unstacked from quasi-Sudoku squares, their slices, and
//! level collapsing.
//!
//! Flattening is fixed throughout: row label `(p, s)` becomes the reordered
//! physical index `m*s + p`, column label `(q, t)` becomes `n*q + t`, and a
//! symbol `(a, b)` becomes `n*a + b`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::are_orthogonal;
use crate::product::{Pair, QuasiSudokuSquare};
use crate::projection::ProjectionSpec;
use crate::report::{ReportItem, VerificationReport};

/// An `N x k` array whose column `j` takes values in `[levels[j]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OaRepr", into = "OaRepr")]
pub struct OrthogonalArray {
    levels: Vec<usize>,
    strength: usize,
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct OaRepr {
    levels: Vec<usize>,
    strength: usize,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<OaRepr> for OrthogonalArray {
    type Error = Error;

    fn try_from(r: OaRepr) -> Result<Self> {
        OrthogonalArray::new(r.levels, r.strength, r.rows)
    }
}

impl From<OrthogonalArray> for OaRepr {
    fn from(o: OrthogonalArray) -> Self {
        Self {
            levels: o.levels,
            strength: o.strength,
            rows: o.rows,
        }
    }
}

impl OrthogonalArray {
    /// Checks shape and level ranges. The strength is a claim; see [`verify_oa_strength`].
    pub fn new(levels: Vec<usize>, strength: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let k = levels.len();
        if k == 0 || levels.contains(&0) {
            return Err(Error::MalformedArray(
                "need at least one column, all with levels >= 1".into(),
            ));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::MalformedArray(format!(
                    "row {r} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for (j, (&x, &s)) in row.iter().zip(&levels).enumerate() {
                if x >= s {
                    return Err(Error::MalformedArray(format!(
                        "entry {x} at row {r}, column {j} is outside [0, {s})"
                    )));
                }
            }
        }
        Ok(Self { levels, strength, rows })
    }

    pub fn runs(&self) -> usize {
        self.rows.len()
    }

    pub fn factors(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn select(&self, indices: &[usize]) -> Vec<Vec<usize>> {
        indices.iter().map(|&i| self.rows[i].clone()).collect()
    }
}

pub fn subset_label(columns: &[usize]) -> String {
    format!("columns {}", columns.iter().join(","))
}

/// Exhaustive strength-`t` check over every `t`-subset of columns.
///
/// Each item carries the constant `lambda_T` when the subset is balanced, or
/// the first tuple (in lexicographic order) whose count deviates.
pub fn verify_oa_strength(oa: &OrthogonalArray, t: usize) -> VerificationReport {
    let n_runs = oa.runs();
    let mut report = VerificationReport::new(format!(
        "OA({}, {}, {{{}}}, {t})",
        n_runs,
        oa.factors(),
        oa.levels.iter().join(",")
    ));
    if t == 0 || t > oa.factors() {
        report.push(ReportItem::fail(
            "strength",
            vec![format!("strength {t} not in 1..={}", oa.factors())],
        ));
        return report;
    }
    for cols in (0..oa.factors()).combinations(t) {
        let radix: Vec<usize> = cols.iter().map(|&c| oa.levels[c]).collect();
        let cells: usize = radix.iter().product();
        let mut counts = vec![0usize; cells];
        for row in &oa.rows {
            let idx = cols.iter().zip(&radix).fold(0, |acc, (&c, &s)| acc * s + row[c]);
            counts[idx] += 1;
        }
        let label = subset_label(&cols);
        let expected = n_runs / cells;
        let deviant = if !n_runs.is_multiple_of(cells) {
            Some(0)
        } else {
            counts.iter().position(|&c| c != expected)
        };
        match deviant {
            None if expected > 0 => report.push(ReportItem::pass(label, Some(expected))),
            None => report.push(ReportItem::fail(label, vec!["no runs".into()])),
            Some(idx) => {
                let mut tuple = vec![0; t];
                let mut rest = idx;
                for (slot, &s) in tuple.iter_mut().zip(&radix).rev() {
                    *slot = rest % s;
                    rest /= s;
                }
                let problem = if !n_runs.is_multiple_of(cells) {
                    format!("{n_runs} runs cannot balance {cells} level combinations")
                } else {
                    format!(
                        "tuple ({}) appears {} times, expected {expected}",
                        tuple.iter().join(","),
                        counts[idx]
                    )
                };
                report.push(ReportItem::fail(label, vec![problem]));
            }
        }
    }
    report
}

/// Rows `[r, c, sq_1(r, c), ..., sq_K(r, c)]`, row-major over the reordered grid.
pub fn unstack(squares: &[QuasiSudokuSquare]) -> Result<OrthogonalArray> {
    let first = squares
        .first()
        .ok_or_else(|| Error::MalformedArray("need at least two squares".into()))?;
    if squares.len() < 2 {
        return Err(Error::MalformedArray("need at least two squares".into()));
    }
    let base = first.square();
    for sq in &squares[1..] {
        let s = sq.square();
        if s.m() != base.m()
            || s.n() != base.n()
            || s.row_labels() != base.row_labels()
            || s.col_labels() != base.col_labels()
        {
            return Err(Error::LabelMismatch);
        }
    }
    let latins = squares
        .iter()
        .map(|s| s.square().to_latin())
        .collect::<Result<Vec<_>>>()?;
    for i in 0..latins.len() {
        for j in i + 1..latins.len() {
            if !are_orthogonal(&latins[i], &latins[j])? {
                return Err(Error::NotOrthogonal { first: i, second: j });
            }
        }
    }
    let order = base.order();
    let mut rows = Vec::with_capacity(order * order);
    for r in 0..order {
        for c in 0..order {
            let mut row = vec![r, c];
            row.extend(latins.iter().map(|l| l.get(r, c)));
            rows.push(row);
        }
    }
    OrthogonalArray::new(vec![order; 2 + squares.len()], 2, rows)
}

/// Level collapse applied to one column of an unstacked array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColumnProjection {
    /// Row index `m*s + p -> s`.
    RowBand { m: usize, n: usize },
    /// Column index `n*q + t -> t`.
    ColumnOffset { m: usize, n: usize },
    /// Symbol `n*a + b -> Pi_m(a, b)`.
    SymbolM { spec: ProjectionSpec },
    /// Symbol `n*a + b -> Pi_n(a, b)`.
    SymbolN { spec: ProjectionSpec },
}

impl ColumnProjection {
    fn orders(&self) -> (usize, usize) {
        match *self {
            ColumnProjection::RowBand { m, n } | ColumnProjection::ColumnOffset { m, n } => (m, n),
            ColumnProjection::SymbolM { spec } | ColumnProjection::SymbolN { spec } => (spec.m(), spec.n()),
        }
    }

    pub fn apply(&self, level: usize) -> usize {
        match *self {
            ColumnProjection::RowBand { m, .. } => level / m,
            ColumnProjection::ColumnOffset { n, .. } => level % n,
            ColumnProjection::SymbolM { spec } => spec.onto_m(Pair::unflatten(level, spec.n())),
            ColumnProjection::SymbolN { spec } => spec.onto_n(Pair::unflatten(level, spec.n())),
        }
    }

    pub fn source_levels(&self) -> usize {
        let (m, n) = self.orders();
        m * n
    }

    pub fn target_levels(&self) -> usize {
        let (m, n) = self.orders();
        match self {
            ColumnProjection::SymbolM { .. } => m,
            _ => n,
        }
    }

    /// Source levels grouped by their image, indexed by image.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.target_levels()];
        for level in 0..self.source_levels() {
            classes[self.apply(level)].push(level);
        }
        classes
    }
}

impl fmt::Display for ColumnProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnProjection::RowBand { .. } => write!(f, "(p,s) -> s"),
            ColumnProjection::ColumnOffset { .. } => write!(f, "(q,t) -> t"),
            ColumnProjection::SymbolM { spec } => write!(f, "{} onto [{}]", spec.kind(), spec.m()),
            ColumnProjection::SymbolN { spec } => write!(f, "{} onto [{}]", spec.kind(), spec.n()),
        }
    }
}

/// An unstacked array partitioned into `m` slices, optionally with per-column
/// collapses and the collapsed slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicedOA {
    full: OrthogonalArray,
    m: usize,
    n: usize,
    slices: Vec<Vec<usize>>,
    projections: Option<Vec<ColumnProjection>>,
    collapsed: Vec<OrthogonalArray>,
}

impl SlicedOA {
    pub fn full(&self) -> &OrthogonalArray {
        &self.full
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slice_count(&self) -> usize {
        self.slices.len()
    }

    /// Row indices of each slice, in full-array order.
    pub fn slices(&self) -> &[Vec<usize>] {
        &self.slices
    }

    /// Slice index of every row of the full array.
    pub fn slice_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.full.runs()];
        for (q, rows) in self.slices.iter().enumerate() {
            for &r in rows {
                labels[r] = q;
            }
        }
        labels
    }

    pub fn projections(&self) -> Option<&[ColumnProjection]> {
        self.projections.as_deref()
    }

    pub fn collapsed_levels(&self) -> Option<Vec<usize>> {
        self.projections
            .as_ref()
            .map(|ps| ps.iter().map(ColumnProjection::target_levels).collect())
    }

    /// Collapsed slices; empty until [`collapse_slices`] has run.
    pub fn collapsed(&self) -> &[OrthogonalArray] {
        &self.collapsed
    }

    /// Partition, projection and per-slice strength-2 checks.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new(format!(
            "quasi-sliced OA m={} n={} ({} slices)",
            self.m,
            self.n,
            self.slices.len()
        ));
        let mut hits = vec![0usize; self.full.runs()];
        for &r in self.slices.iter().flatten() {
            hits[r] += 1;
        }
        let bad: Vec<String> = hits
            .iter()
            .enumerate()
            .filter(|(_, &h)| h != 1)
            .map(|(r, h)| format!("row {r} lies in {h} slices"))
            .collect();
        report.push(if bad.is_empty() {
            ReportItem::pass("partition", Some(self.slices.len()))
        } else {
            ReportItem::fail("partition", bad)
        });
        let Some(projections) = &self.projections else {
            report.push(ReportItem::fail("projections", vec!["not set".into()]));
            return report;
        };
        for (j, proj) in projections.iter().enumerate() {
            let classes = proj.classes();
            let mut problems = Vec::new();
            if classes.iter().any(Vec::is_empty) {
                problems.push(format!("{proj} is not onto"));
            }
            if proj.target_levels() >= proj.source_levels() {
                problems.push(format!("{proj} is one-to-one"));
            }
            let label = format!("projection column {j}");
            report.push(if problems.is_empty() {
                ReportItem::pass(label, None)
            } else {
                ReportItem::fail(label, problems)
            });
        }
        for (q, slice) in self.collapsed.iter().enumerate() {
            let mut sub = verify_oa_strength(slice, 2);
            sub.subject = format!("slice {q}");
            report.absorb(sub);
        }
        report
    }
}

/// Slice `q` takes the rows whose column index `n*q + t` has block `q`.
pub fn partition_slices(oa: &OrthogonalArray, m: usize, n: usize) -> Result<SlicedOA> {
    let order = m * n;
    if order == 0 {
        return Err(Error::MalformedArray("orders must be positive".into()));
    }
    if oa.factors() < 2 || oa.levels.iter().any(|&s| s != order) {
        return Err(Error::MalformedArray(format!(
            "expected at least 2 columns, all with {order} levels"
        )));
    }
    if oa.runs() != order * order {
        return Err(Error::MalformedArray(format!(
            "expected {} runs, found {}",
            order * order,
            oa.runs()
        )));
    }
    let mut slices = vec![Vec::with_capacity(order * n); m];
    for (r, row) in oa.rows.iter().enumerate() {
        slices[row[1] / n].push(r);
    }
    Ok(SlicedOA {
        full: oa.clone(),
        m,
        n,
        slices,
        projections: None,
        collapsed: Vec::new(),
    })
}

/// Per-column collapses: `(p,s) -> s`, `(q,t) -> t`, `Pi_m` on the first
/// symbol column, `Pi_n` on every later symbol column.
pub fn column_projections(k: usize, spec: &ProjectionSpec) -> Vec<ColumnProjection> {
    let (m, n) = (spec.m(), spec.n());
    (0..k)
        .map(|j| match j {
            0 => ColumnProjection::RowBand { m, n },
            1 => ColumnProjection::ColumnOffset { m, n },
            2 => ColumnProjection::SymbolM { spec: *spec },
            _ => ColumnProjection::SymbolN { spec: *spec },
        })
        .collect()
}

pub fn collapse_slices(sliced: &SlicedOA, spec: &ProjectionSpec) -> Result<SlicedOA> {
    if spec.m() != sliced.m || spec.n() != sliced.n {
        return Err(Error::SpecViolation(format!(
            "spec is for m={} n={}, array for m={} n={}",
            spec.m(),
            spec.n(),
            sliced.m,
            sliced.n
        )));
    }
    let projections = column_projections(sliced.full.factors(), spec);
    if let Some(p) = projections.iter().find(|p| p.target_levels() >= p.source_levels()) {
        return Err(Error::SpecViolation(format!(
            "{p} does not collapse any levels for m={} n={}",
            sliced.m, sliced.n
        )));
    }
    let levels: Vec<usize> = projections.iter().map(ColumnProjection::target_levels).collect();
    let collapsed = sliced
        .slices
        .iter()
        .map(|rows| {
            let data = rows
                .iter()
                .map(|&r| {
                    sliced.full.rows[r]
                        .iter()
                        .zip(&projections)
                        .map(|(&x, p)| p.apply(x))
                        .collect()
                })
                .collect();
            OrthogonalArray::new(levels.clone(), 2, data)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SlicedOA {
        projections: Some(projections),
        collapsed,
        ..sliced.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_column_strength_one() {
        let oa = OrthogonalArray::new(vec![3], 1, (0..9).map(|i| vec![i % 3]).collect()).unwrap();
        let report = verify_oa_strength(&oa, 1);
        assert!(report.passed());
        assert_eq!(report.item("columns 0").unwrap().count, Some(3));
    }

    #[test]
    fn printed_slice_lambdas() {
        let oa = OrthogonalArray::new(vec![3, 3, 4, 3], 2, fixtures::collapsed_slice_0_rows()).unwrap();
        let report = verify_oa_strength(&oa, 2);
        assert!(report.passed(), "{report}");
        assert_eq!(report.item("columns 0,2").unwrap().count, Some(3));
        assert_eq!(report.item("columns 0,1").unwrap().count, Some(4));
    }

    #[test]
    fn altered_entry_fails() {
        let mut rows = fixtures::collapsed_slice_0_rows();
        rows[5][2] = (rows[5][2] + 1) % 4;
        let oa = OrthogonalArray::new(vec![3, 3, 4, 3], 2, rows).unwrap();
        let report = verify_oa_strength(&oa, 2);
        assert!(!report.passed());
        assert!(report.item("columns 0,1").unwrap().passed());
        assert!(!report.item("columns 0,2").unwrap().passed());
    }

    #[test]
    fn bad_strength_and_indivisible_runs() {
        let oa = OrthogonalArray::new(vec![2, 2], 2, vec![vec![0, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert!(!verify_oa_strength(&oa, 3).passed());
        let r = verify_oa_strength(&oa, 1);
        assert!(r.item("columns 0").unwrap().problems[0].contains("cannot balance"));
    }

    #[test]
    fn out_of_range_entry_is_rejected() {
        assert!(matches!(
            OrthogonalArray::new(vec![2], 1, vec![vec![2]]),
            Err(Error::MalformedArray(_))
        ));
    }

    #[test]
    fn column_projection_classes() {
        let spec = ProjectionSpec::modular(4, 3).unwrap();
        let ps = column_projections(4, &spec);
        assert_eq!(ps[0].classes()[1], vec![4, 5, 6, 7]);
        assert_eq!(ps[1].classes()[2], vec![2, 5, 8, 11]);
        assert_eq!(ps[2].classes().iter().map(Vec::len).collect::<Vec<_>>(), vec![3; 4]);
        assert_eq!(ps[3].classes()[0], vec![0, 3, 6, 9]);
    }
}
