//! Direct products of Latin squares and their quasi-Sudoku row order.
//!
//! Rows of a product carry labels `(p, s)` and columns `(q, t)` with
//! `p, q in [m]` and `s, t in [n]`. The direct product places label `(p, s)` at
//! physical row `n*p + s`; the quasi-Sudoku order moves it to `m*s + p`.
//! Columns always sit at `n*q + t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::report::{ReportItem, VerificationReport};

/// A product symbol `(a, b)` with `a in [m]`, `b in [n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair(pub usize, pub usize);

impl Pair {
    /// `n*a + b`
    pub fn flatten(self, n: usize) -> usize {
        n * self.0 + self.1
    }

    pub fn unflatten(x: usize, n: usize) -> Self {
        Pair(x / n, x % n)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

impl From<(usize, usize)> for Pair {
    fn from((a, b): (usize, usize)) -> Self {
        Pair(a, b)
    }
}

/// An `mn x mn` square of pair symbols with row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSquare {
    m: usize,
    n: usize,
    cells: Vec<Pair>,
    row_labels: Vec<(usize, usize)>,
    col_labels: Vec<(usize, usize)>,
}

impl ProductSquare {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Pair {
        self.cells[row * self.order() + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Pair]> {
        self.cells.chunks(self.order())
    }

    pub fn to_rows(&self) -> Vec<Vec<Pair>> {
        self.rows().map(<[Pair]>::to_vec).collect()
    }

    /// Label `(p, s)` of each physical row.
    pub fn row_labels(&self) -> &[(usize, usize)] {
        &self.row_labels
    }

    /// Label `(q, t)` of each physical column.
    pub fn col_labels(&self) -> &[(usize, usize)] {
        &self.col_labels
    }

    /// Physical row holding label `(p, s)`.
    pub fn row_of(&self, label: (usize, usize)) -> Option<usize> {
        self.row_labels.iter().position(|&l| l == label)
    }

    /// Physical column holding label `(q, t)`.
    pub fn col_of(&self, label: (usize, usize)) -> Option<usize> {
        self.col_labels.iter().position(|&l| l == label)
    }

    /// Cell at the given row and column labels.
    pub fn at_labels(&self, row: (usize, usize), col: (usize, usize)) -> Option<Pair> {
        Some(self.get(self.row_of(row)?, self.col_of(col)?))
    }

    /// Cells flattened by `(a, b) -> n*a + b`, row-major.
    pub fn flat_cells(&self) -> Vec<usize> {
        self.cells.iter().map(|p| p.flatten(self.n)).collect()
    }

    pub fn flat_rows(&self) -> Vec<Vec<usize>> {
        self.flat_cells().chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// The flattened view as a validated Latin square.
    pub fn to_latin(&self) -> Result<LatinSquare> {
        LatinSquare::new(self.flat_rows())
    }

    /// Assembles a square from parts, checking shape, symbol ranges, and that both
    /// label lists are bijections onto `[m] x [n]`.
    pub fn from_parts(
        m: usize,
        n: usize,
        rows: Vec<Vec<Pair>>,
        row_labels: Vec<(usize, usize)>,
        col_labels: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let order = m * n;
        for labels in [&row_labels, &col_labels] {
            let mut seen = vec![false; order];
            if labels.len() != order {
                return Err(Error::LabelMismatch);
            }
            for &(x, y) in labels.iter() {
                if x >= m || y >= n || std::mem::replace(&mut seen[x * n + y], true) {
                    return Err(Error::LabelMismatch);
                }
            }
        }
        let mut sq = QuasiSudokuSquare::from_grid(m, n, rows)?.inner;
        sq.row_labels = row_labels;
        sq.col_labels = col_labels;
        Ok(sq)
    }
}

fn direct_labels(m: usize, n: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|p| (0..n).map(move |s| (p, s))).collect()
}

fn quasi_row_labels(m: usize, n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|s| (0..m).map(move |p| (p, s))).collect()
}

/// `A1 (x) A2`: cell `(n*p + s, n*q + t)` is `(A1(p, q), A2(s, t))`.
pub fn direct_product(a1: &LatinSquare, a2: &LatinSquare) -> ProductSquare {
    let (m, n) = (a1.order(), a2.order());
    let mut cells = Vec::with_capacity(m * m * n * n);
    for p in 0..m {
        for s in 0..n {
            for q in 0..m {
                for t in 0..n {
                    cells.push(Pair(a1.get(p, q), a2.get(s, t)));
                }
            }
        }
    }
    ProductSquare {
        m,
        n,
        cells,
        row_labels: direct_labels(m, n),
        col_labels: direct_labels(m, n),
    }
}

/// A product square in quasi-Sudoku row order.
///
/// Blocks are indexed `(s, q)`: rows `m*s .. m*s + m` by columns
/// `n*q .. n*q + n`, giving `n` row bands of `m` rows and `m` column bands of
/// `n` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiSudokuSquare {
    inner: ProductSquare,
}

impl QuasiSudokuSquare {
    /// Wraps a raw grid laid out in quasi-Sudoku order, e.g. one read from a file.
    ///
    /// Only dimensions and symbol ranges are checked; block and Latin
    /// structure are left to [`verify_quasi_sudoku`].
    pub fn from_grid(m: usize, n: usize, rows: Vec<Vec<Pair>>) -> Result<Self> {
        let order = m * n;
        if order == 0 {
            return Err(Error::EmptyGrid);
        }
        if rows.len() != order {
            return Err(Error::NotSquare {
                row: rows.len().min(order),
                len: rows.len(),
                expected: order,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: order,
                });
            }
            for (c, sym) in row.iter().enumerate() {
                if sym.0 >= m || sym.1 >= n {
                    return Err(Error::SymbolOutOfRange {
                        row: r,
                        col: c,
                        symbol: sym.flatten(n),
                        order,
                    });
                }
            }
        }
        Ok(Self {
            inner: ProductSquare {
                m,
                n,
                cells: rows.into_iter().flatten().collect(),
                row_labels: quasi_row_labels(m, n),
                col_labels: direct_labels(m, n),
            },
        })
    }

    pub fn square(&self) -> &ProductSquare {
        &self.inner
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn get(&self, row: usize, col: usize) -> Pair {
        self.inner.get(row, col)
    }

    /// Cells of block `(s, q)` in row-major order within the block.
    pub fn block(&self, s: usize, q: usize) -> Vec<Pair> {
        block_cells(self.m(), self.n(), s, q, |r, c| self.get(r, c))
    }

    /// Undoes the row move, returning the square in direct-product order.
    pub fn to_product_order(&self) -> ProductSquare {
        let (m, n) = (self.m(), self.n());
        let order = m * n;
        let mut cells = vec![Pair(0, 0); order * order];
        for (row, src) in self.inner.rows().enumerate() {
            let (p, s) = self.inner.row_labels[row];
            let dst = n * p + s;
            cells[dst * order..(dst + 1) * order].copy_from_slice(src);
        }
        ProductSquare {
            m,
            n,
            cells,
            row_labels: direct_labels(m, n),
            col_labels: self.inner.col_labels.clone(),
        }
    }
}

pub(crate) fn block_cells<T>(m: usize, n: usize, s: usize, q: usize, get: impl Fn(usize, usize) -> T) -> Vec<T> {
    (0..m)
        .flat_map(|p| (0..n).map(move |t| (m * s + p, n * q + t)))
        .map(|(r, c)| get(r, c))
        .collect()
}

/// Moves the row labelled `(p, s)` to physical position `m*s + p`; columns stay put.
pub fn quasi_sudoku_reorder(sq: &ProductSquare) -> QuasiSudokuSquare {
    let (m, n) = (sq.m, sq.n);
    let order = m * n;
    let mut cells = vec![Pair(0, 0); order * order];
    for (row, src) in sq.rows().enumerate() {
        let (p, s) = sq.row_labels[row];
        let dst = m * s + p;
        cells[dst * order..(dst + 1) * order].copy_from_slice(src);
    }
    QuasiSudokuSquare {
        inner: ProductSquare {
            m,
            n,
            cells,
            row_labels: quasi_row_labels(m, n),
            col_labels: sq.col_labels.clone(),
        },
    }
}

/// Checks the Latin property and that every `(s, q)` block holds each pair once.
pub fn verify_quasi_sudoku(sq: &QuasiSudokuSquare) -> VerificationReport {
    let (m, n) = (sq.m(), sq.n());
    let mut report = VerificationReport::new(format!("quasi-Sudoku square m={m} n={n}"));
    report.push(match sq.square().to_latin() {
        Ok(_) => ReportItem::pass("latin", None),
        Err(e) => ReportItem::fail("latin", vec![e.to_string()]),
    });
    for s in 0..n {
        for q in 0..m {
            let cells = sq.block(s, q);
            let problems = block_problems(m, n, cells.iter().map(|p| (p.0, p.1)), |x, y| format!("{}", Pair(x, y)));
            report.push(block_item(s, q, problems));
        }
    }
    report
}

pub(crate) fn block_item(s: usize, q: usize, problems: Vec<String>) -> ReportItem {
    let label = format!("block (s={s}, q={q})");
    if problems.is_empty() {
        ReportItem::pass(label, Some(1))
    } else {
        ReportItem::fail(label, problems)
    }
}

/// Deficits and excesses of a block that should hold every pair of `[m] x [n]` once.
pub(crate) fn block_problems(
    m: usize,
    n: usize,
    cells: impl Iterator<Item = (usize, usize)>,
    show: impl Fn(usize, usize) -> String,
) -> Vec<String> {
    let mut counts = vec![0usize; m * n];
    let mut problems = Vec::new();
    for (x, y) in cells {
        if x >= m || y >= n {
            problems.push(format!("symbol {} out of range", show(x, y)));
            continue;
        }
        counts[x * n + y] += 1;
    }
    for (i, &c) in counts.iter().enumerate() {
        let (x, y) = (i / n, i % n);
        match c {
            1 => {}
            0 => problems.push(format!("missing {}", show(x, y))),
            c => problems.push(format!("{} appears {c} times", show(x, y))),
        }
    }
    problems
}
