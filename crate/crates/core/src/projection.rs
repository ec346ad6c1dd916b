//! Symbol projections `[m] x [n] -> [m]` and `[m] x [n] -> [n]`, and the
//! blockwise double-orthogonality check on superimposed projected squares.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::product::{block_cells, block_item, block_problems, Pair, QuasiSudokuSquare};
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionKind {
    /// `(a, b) -> a` onto `[m]`, `(a, b) -> b` onto `[n]`.
    Coordinate,
    /// `(a, b) -> (n*a + b) mod m` onto `[m]`, `(n*a + b) mod n` onto `[n]`.
    /// Needs `gcd(m, n) = 1` and `m > n`.
    Modular,
}

impl fmt::Display for ProjectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionKind::Coordinate => "coordinate",
            ProjectionKind::Modular => "modular",
        })
    }
}

impl std::str::FromStr for ProjectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coordinate" => Ok(ProjectionKind::Coordinate),
            "modular" => Ok(ProjectionKind::Modular),
            other => Err(Error::Parse(format!("unknown projection `{other}`"))),
        }
    }
}

/// A validated pair of projections for component orders `(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct ProjectionSpec {
    kind: ProjectionKind,
    m: usize,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    kind: ProjectionKind,
    m: usize,
    n: usize,
}

impl TryFrom<SpecRepr> for ProjectionSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        ProjectionSpec::new(r.kind, r.m, r.n)
    }
}

impl From<ProjectionSpec> for SpecRepr {
    fn from(s: ProjectionSpec) -> Self {
        Self {
            kind: s.kind,
            m: s.m,
            n: s.n,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ProjectionSpec {
    pub fn new(kind: ProjectionKind, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::SpecViolation(format!(
                "orders must be positive, got m={m} n={n}"
            )));
        }
        if kind == ProjectionKind::Modular {
            if m <= n {
                return Err(Error::SpecViolation(format!(
                    "modular projection needs m > n, got m={m} n={n}"
                )));
            }
            if gcd(m, n) != 1 {
                return Err(Error::SpecViolation(format!(
                    "modular projection needs coprime orders, gcd({m}, {n}) = {}",
                    gcd(m, n)
                )));
            }
        }
        Ok(Self { kind, m, n })
    }

    pub fn coordinate(m: usize, n: usize) -> Result<Self> {
        Self::new(ProjectionKind::Coordinate, m, n)
    }

    pub fn modular(m: usize, n: usize) -> Result<Self> {
        Self::new(ProjectionKind::Modular, m, n)
    }

    /// Every spec valid for `(m, n)`: coordinate always, modular when allowed.
    pub fn all_valid(m: usize, n: usize) -> Vec<Self> {
        [ProjectionKind::Coordinate, ProjectionKind::Modular]
            .into_iter()
            .filter_map(|k| Self::new(k, m, n).ok())
            .collect()
    }

    pub fn kind(&self) -> ProjectionKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn onto_m(&self, sym: Pair) -> usize {
        project_symbol_m(sym, self)
    }

    pub fn onto_n(&self, sym: Pair) -> usize {
        project_symbol_n(sym, self)
    }
}

pub fn project_symbol_m(sym: Pair, spec: &ProjectionSpec) -> usize {
    let Pair(a, b) = sym;
    match spec.kind {
        ProjectionKind::Coordinate => a,
        ProjectionKind::Modular => (spec.n * a + b) % spec.m,
    }
}

pub fn project_symbol_n(sym: Pair, spec: &ProjectionSpec) -> usize {
    let Pair(a, b) = sym;
    match spec.kind {
        ProjectionKind::Coordinate => b,
        ProjectionKind::Modular => (spec.n * a + b) % spec.n,
    }
}

/// Cell `(i, j)` holds `(Pi_m(first(i, j)), Pi_n(second(i, j)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedOverlay {
    m: usize,
    n: usize,
    cells: Vec<(usize, usize)>,
}

impl ProjectedOverlay {
    /// Wraps raw overlay cells in quasi-Sudoku layout.
    pub fn from_grid(m: usize, n: usize, rows: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let order = m * n;
        if order == 0 || rows.len() != order {
            return Err(Error::NotSquare {
                row: 0,
                len: rows.len(),
                expected: order,
            });
        }
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
            return Err(Error::NotSquare {
                row: r,
                len: row.len(),
                expected: order,
            });
        }
        Ok(Self {
            m,
            n,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    pub fn get(&self, row: usize, col: usize) -> (usize, usize) {
        self.cells[row * self.order() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: (usize, usize)) {
        let order = self.order();
        self.cells[row * order + col] = value;
    }

    pub fn to_rows(&self) -> Vec<Vec<(usize, usize)>> {
        self.cells.chunks(self.order()).map(<[_]>::to_vec).collect()
    }

    pub fn block(&self, s: usize, q: usize) -> Vec<(usize, usize)> {
        block_cells(self.m, self.n, s, q, |r, c| self.get(r, c))
    }

    /// Each row of block `(s, q)` as a set of values.
    pub fn block_row_sets(&self, s: usize, q: usize) -> Vec<BTreeSet<(usize, usize)>> {
        self.block(s, q)
            .chunks(self.n)
            .map(|row| row.iter().copied().collect())
            .collect()
    }
}

pub fn superimpose(
    first: &QuasiSudokuSquare,
    second: &QuasiSudokuSquare,
    spec: &ProjectionSpec,
) -> Result<ProjectedOverlay> {
    let (a, b) = (first.square(), second.square());
    if a.m() != b.m() || a.n() != b.n() || a.row_labels() != b.row_labels() || a.col_labels() != b.col_labels() {
        return Err(Error::LabelMismatch);
    }
    if spec.m != a.m() || spec.n != a.n() {
        return Err(Error::SpecViolation(format!(
            "spec is for m={} n={}, squares have m={} n={}",
            spec.m,
            spec.n,
            a.m(),
            a.n()
        )));
    }
    let order = a.order();
    let cells = (0..order)
        .flat_map(|i| (0..order).map(move |j| (i, j)))
        .map(|(i, j)| (spec.onto_m(a.get(i, j)), spec.onto_n(b.get(i, j))))
        .collect();
    Ok(ProjectedOverlay {
        m: a.m(),
        n: a.n(),
        cells,
    })
}

/// Passes iff every `(s, q)` block holds each pair of `[m] x [n]` exactly once.
pub fn verify_double_orthogonality(overlay: &ProjectedOverlay) -> VerificationReport {
    let (m, n) = (overlay.m, overlay.n);
    let mut report = VerificationReport::new(format!("double orthogonality m={m} n={n}"));
    for s in 0..n {
        for q in 0..m {
            let problems = block_problems(m, n, overlay.block(s, q).into_iter(), |x, y| format!("({x},{y})"));
            report.push(block_item(s, q, problems));
        }
    }
    report
}
