//! The 12x12 worked example (m = 4, n = 3), embedded verbatim.
//!
//! Grids are stored as printed: a row label `ps` (or `p s` digits run together),
//! a `|`, then twelve cells. Columns are labelled `qt` in the order
//! 00, 01, 02, 10, ..., 32 in every grid. Pair cells print `(x, y)` as `xy`;
//! overlay cells print it as `x,y`.

use crate::error::{Error, Result};
use crate::latin::{LatinSquare, MolsSet};

/// Three pairwise orthogonal squares of order 4, in printed order.
pub const EXAMPLE_ORDER_4: &str = "\
0 1 2 3
1 0 3 2
2 3 0 1
3 2 1 0

0 1 2 3
3 2 1 0
1 0 3 2
2 3 0 1

0 1 2 3
2 3 0 1
3 2 1 0
1 0 3 2
";

/// Two orthogonal squares of order 3, in printed order.
pub const EXAMPLE_ORDER_3: &str = "\
0 1 2
1 2 0
2 0 1

0 1 2
2 0 1
1 2 0
";

pub const FIXTURE_NAMES: &[&str] = &["fig2-order4", "fig2-order3"];

/// The squares printed for the worked example.
///
/// `fig2-order4` yields all three order-4 squares; the example pairs the first
/// with the last (see [`MolsSet::first_and_last`]).
pub fn fixture_catalog(name: &str) -> Result<MolsSet> {
    let text = match name {
        "fig2-order4" => EXAMPLE_ORDER_4,
        "fig2-order3" => EXAMPLE_ORDER_3,
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    let squares = text
        .split("\n\n")
        .map(|block| {
            let rows = block
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(parse_digits)
                .collect::<Result<Vec<_>>>()?;
            LatinSquare::new(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    MolsSet::new(squares)
}

fn parse_digits(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad symbol `{t}`"))))
        .collect()
}

/// A printed 12x12 grid: the row label of each printed row plus its cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGrid<T> {
    /// `(p, s)` for each printed row, top to bottom.
    pub row_labels: Vec<(usize, usize)>,
    pub rows: Vec<Vec<T>>,
}

/// `(q, t)` for each printed column, left to right.
pub fn column_labels() -> Vec<(usize, usize)> {
    (0..4).flat_map(|q| (0..3).map(move |t| (q, t))).collect()
}

fn two_digits(tok: &str) -> Result<(usize, usize)> {
    let digits: Vec<usize> = tok
        .chars()
        .filter(|c| *c != ',')
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Parse(format!("bad pair `{tok}`")))?;
    match digits.as_slice() {
        [x, y] => Ok((*x, *y)),
        _ => Err(Error::Parse(format!("bad pair `{tok}`"))),
    }
}

fn parse_labeled<T>(text: &str, cell: impl Fn(&str) -> Result<T>) -> Result<LabeledGrid<T>> {
    let mut row_labels = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (label, cells) = line
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing row label in `{line}`")))?;
        row_labels.push(two_digits(label.trim())?);
        rows.push(cells.split_whitespace().map(&cell).collect::<Result<Vec<_>>>()?);
    }
    Ok(LabeledGrid { row_labels, rows })
}

/// Product and reordered squares: cells are pair symbols `(a, b)`.
pub fn pair_grid(text: &str) -> LabeledGrid<(usize, usize)> {
    parse_labeled(text, two_digits).expect("embedded grid parses")
}

/// Projected squares: cells are single values.
pub fn value_grid(text: &str) -> LabeledGrid<usize> {
    parse_labeled(text, |t| {
        t.parse().map_err(|_| Error::Parse(format!("bad value `{t}`")))
    })
    .expect("embedded grid parses")
}

/// Overlays: cells are projected pairs `x,y`.
pub fn overlay_grid(text: &str) -> LabeledGrid<(usize, usize)> {
    pair_grid(text)
}

/// The collapsed first slice as a 36x4 array (it is printed transposed).
pub fn collapsed_slice_0_rows() -> Vec<Vec<usize>> {
    let display: Vec<Vec<usize>> = COLLAPSED_SLICE_0
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_digits(l).expect("embedded grid parses"))
        .collect();
    (0..display[0].len())
        .map(|r| display.iter().map(|col| col[r]).collect())
        .collect()
}

/// Direct product of the first order-4 and first order-3 squares.
pub const PRODUCT_A: &str = "\
00 | 00 01 02 10 11 12 20 21 22 30 31 32
01 | 01 02 00 11 12 10 21 22 20 31 32 30
02 | 02 00 01 12 10 11 22 20 21 32 30 31
10 | 10 11 12 00 01 02 30 31 32 20 21 22
11 | 11 12 10 01 02 00 31 32 30 21 22 20
12 | 12 10 11 02 00 01 32 30 31 22 20 21
20 | 20 21 22 30 31 32 00 01 02 10 11 12
21 | 21 22 20 31 32 30 01 02 00 11 12 10
22 | 22 20 21 32 30 31 02 00 01 12 10 11
30 | 30 31 32 20 21 22 10 11 12 00 01 02
31 | 31 32 30 21 22 20 11 12 10 01 02 00
32 | 32 30 31 22 20 21 12 10 11 02 00 01
";

/// Direct product of the last order-4 and second order-3 squares.
pub const PRODUCT_B: &str = "\
00 | 00 01 02 10 11 12 20 21 22 30 31 32
01 | 02 00 01 12 10 11 22 20 21 32 30 31
02 | 01 02 00 11 12 10 21 22 20 31 32 30
10 | 20 21 22 30 31 32 00 01 02 10 11 12
11 | 22 20 21 32 30 31 02 00 01 12 10 11
12 | 21 22 20 31 32 30 01 02 00 11 12 10
20 | 30 31 32 20 21 22 10 11 12 00 01 02
21 | 32 30 31 22 20 21 12 10 11 02 00 01
22 | 31 32 30 21 22 20 11 12 10 01 02 00
30 | 10 11 12 00 01 02 30 31 32 20 21 22
31 | 12 10 11 02 00 01 32 30 31 22 20 21
32 | 11 12 10 01 02 00 31 32 30 21 22 20
";

/// Row-reordered (quasi-Sudoku) form of `PRODUCT_A`.
pub const QUASI_A: &str = "\
00 | 00 01 02 10 11 12 20 21 22 30 31 32
10 | 10 11 12 00 01 02 30 31 32 20 21 22
20 | 20 21 22 30 31 32 00 01 02 10 11 12
30 | 30 31 32 20 21 22 10 11 12 00 01 02
01 | 01 02 00 11 12 10 21 22 20 31 32 30
11 | 11 12 10 01 02 00 31 32 30 21 22 20
21 | 21 22 20 31 32 30 01 02 00 11 12 10
31 | 31 32 30 21 22 20 11 12 10 01 02 00
02 | 02 00 01 12 10 11 22 20 21 32 30 31
12 | 12 10 11 02 00 01 32 30 31 22 20 21
22 | 22 20 21 32 30 31 02 00 01 12 10 11
32 | 32 30 31 22 20 21 12 10 11 02 00 01
";

/// Row-reordered (quasi-Sudoku) form of `PRODUCT_B`.
pub const QUASI_B: &str = "\
00 | 00 01 02 10 11 12 20 21 22 30 31 32
10 | 20 21 22 30 31 32 00 01 02 10 11 12
20 | 30 31 32 20 21 22 10 11 12 00 01 02
30 | 10 11 12 00 01 02 30 31 32 20 21 22
01 | 02 00 01 12 10 11 22 20 21 32 30 31
11 | 22 20 21 32 30 31 02 00 01 12 10 11
21 | 32 30 31 22 20 21 12 10 11 02 00 01
31 | 12 10 11 02 00 01 32 30 31 22 20 21
02 | 01 02 00 11 12 10 21 22 20 31 32 30
12 | 21 22 20 31 32 30 01 02 00 11 12 10
22 | 31 32 30 21 22 20 11 12 10 01 02 00
32 | 11 12 10 01 02 00 31 32 30 21 22 20
";

/// `QUASI_A` under the modular projection onto `[4]`.
pub const PROJECTED_A: &str = "\
00 | 0 1 2 3 0 1 2 3 0 1 2 3
10 | 3 0 1 0 1 2 1 2 3 2 3 0
20 | 2 3 0 1 2 3 0 1 2 3 0 1
30 | 1 2 3 2 3 0 3 0 1 0 1 2
01 | 1 2 0 0 1 3 3 0 2 2 3 1
11 | 0 1 3 1 2 0 2 3 1 3 0 2
21 | 3 0 2 2 3 1 1 2 0 0 1 3
31 | 2 3 1 3 0 2 0 1 3 1 2 0
02 | 2 0 1 1 3 0 0 2 3 3 1 2
12 | 1 3 0 2 0 1 3 1 2 0 2 3
22 | 0 2 3 3 1 2 2 0 1 1 3 0
32 | 3 1 2 0 2 3 1 3 0 2 0 1
";

/// `QUASI_B` under the modular projection onto `[3]`.
pub const PROJECTED_B: &str = "\
00 | 0 1 2 0 1 2 0 1 2 0 1 2
10 | 0 1 2 0 1 2 0 1 2 0 1 2
20 | 0 1 2 0 1 2 0 1 2 0 1 2
30 | 0 1 2 0 1 2 0 1 2 0 1 2
01 | 2 0 1 2 0 1 2 0 1 2 0 1
11 | 2 0 1 2 0 1 2 0 1 2 0 1
21 | 2 0 1 2 0 1 2 0 1 2 0 1
31 | 2 0 1 2 0 1 2 0 1 2 0 1
02 | 1 2 0 1 2 0 1 2 0 1 2 0
12 | 1 2 0 1 2 0 1 2 0 1 2 0
22 | 1 2 0 1 2 0 1 2 0 1 2 0
32 | 1 2 0 1 2 0 1 2 0 1 2 0
";

/// Superimposed modular projections.
pub const MODULAR_OVERLAY: &str = "\
00 | 0,0 1,1 2,2 3,0 0,1 1,2 2,0 3,1 0,2 1,0 2,1 3,2
10 | 3,0 0,1 1,2 0,0 1,1 2,2 1,0 2,1 3,2 2,0 3,1 0,2
20 | 2,0 3,1 0,2 1,0 2,1 3,2 0,0 1,1 2,2 3,0 0,1 1,2
30 | 1,0 2,1 3,2 2,0 3,1 0,2 3,0 0,1 1,2 0,0 1,1 2,2
01 | 1,2 2,0 0,1 0,2 1,0 3,1 3,2 0,0 2,1 2,2 3,0 1,1
11 | 0,2 1,0 3,1 1,2 2,0 0,1 2,2 3,0 1,1 3,2 0,0 2,1
21 | 3,2 0,0 2,1 2,2 3,0 1,1 1,2 2,0 0,1 0,2 1,0 3,1
31 | 2,2 3,0 1,1 3,2 0,0 2,1 0,2 1,0 3,1 1,2 2,0 0,1
02 | 2,1 0,2 1,0 1,1 3,2 0,0 0,1 2,2 3,0 3,1 1,2 2,0
12 | 1,1 3,2 0,0 2,1 0,2 1,0 3,1 1,2 2,0 0,1 2,2 3,0
22 | 0,1 2,2 3,0 3,1 1,2 2,0 2,1 0,2 1,0 1,1 3,2 0,0
32 | 3,1 1,2 2,0 0,1 2,2 3,0 1,1 3,2 0,0 2,1 0,2 1,0
";

/// Superimposed coordinate projections.
pub const COORDINATE_OVERLAY: &str = "\
00 | 0,0 0,1 0,2 1,0 1,1 1,2 2,0 2,1 2,2 3,0 3,1 3,2
10 | 1,0 1,1 1,2 0,0 0,1 0,2 3,0 3,1 3,2 2,0 2,1 2,2
20 | 2,0 2,1 2,2 3,0 3,1 3,2 0,0 0,1 0,2 1,0 1,1 1,2
30 | 3,0 3,1 3,2 2,0 2,1 2,2 1,0 1,1 1,2 0,0 0,1 0,2
01 | 0,2 0,0 0,1 1,2 1,0 1,1 2,2 2,0 2,1 3,2 3,0 3,1
11 | 1,2 1,0 1,1 0,2 0,0 0,1 3,2 3,0 3,1 2,2 2,0 2,1
21 | 2,2 2,0 2,1 3,2 3,0 3,1 0,2 0,0 0,1 1,2 1,0 1,1
31 | 3,2 3,0 3,1 2,2 2,0 2,1 1,2 1,0 1,1 0,2 0,0 0,1
02 | 0,1 0,2 0,0 1,1 1,2 1,0 2,1 2,2 2,0 3,1 3,2 3,0
12 | 1,1 1,2 1,0 0,1 0,2 0,0 3,1 3,2 3,0 2,1 2,2 2,0
22 | 2,1 2,2 2,0 3,1 3,2 3,0 0,1 0,2 0,0 1,1 1,2 1,0
32 | 3,1 3,2 3,0 2,1 2,2 2,0 1,1 1,2 1,0 0,1 0,2 0,0
";

/// The collapsed first slice, as printed: one line per array column.
pub const COLLAPSED_SLICE_0: &str = "\
0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 1 2 2 2 2 2 2 2 2 2 2 2 2
0 1 2 0 1 2 0 1 2 0 1 2 0 1 2 0 1 2 0 1 2 0 1 2 0 1 2 0 1 2 0 1 2 0 1 2
0 1 2 3 0 1 2 3 0 1 2 3 1 2 0 0 1 3 3 0 2 2 3 1 2 0 1 1 3 0 0 2 3 3 1 2
0 1 2 0 1 2 0 1 2 0 1 2 2 0 1 2 0 1 2 0 1 2 0 1 1 2 0 1 2 0 1 2 0 1 2 0
";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::are_orthogonal;

    #[test]
    fn catalog_order_three() {
        let set = fixture_catalog("fig2-order3").unwrap();
        assert_eq!(
            set.squares()[0].to_rows(),
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
        );
        assert!(are_orthogonal(&set.squares()[0], &set.squares()[1]).unwrap());
    }

    #[test]
    fn catalog_order_four() {
        let set = fixture_catalog("fig2-order4").unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set.squares()[0].to_rows()[1], vec![1, 0, 3, 2]);
        let (a1, b1) = set.first_and_last().unwrap();
        assert_eq!(b1.to_rows()[1], vec![2, 3, 0, 1]);
        assert!(are_orthogonal(a1, b1).unwrap());
    }

    #[test]
    fn unknown_fixture() {
        assert_eq!(fixture_catalog("fig9"), Err(Error::UnknownFixture("fig9".into())));
    }

    #[test]
    fn grids_have_expected_shape() {
        for text in [
            PRODUCT_A,
            PRODUCT_B,
            QUASI_A,
            QUASI_B,
            MODULAR_OVERLAY,
            COORDINATE_OVERLAY,
        ] {
            let g = pair_grid(text);
            assert_eq!(g.rows.len(), 12);
            assert!(g.rows.iter().all(|r| r.len() == 12));
        }
        for text in [PROJECTED_A, PROJECTED_B] {
            let g = value_grid(text);
            assert_eq!(g.rows.len(), 12);
        }
        let o0 = collapsed_slice_0_rows();
        assert_eq!(o0.len(), 36);
        assert!(o0.iter().all(|r| r.len() == 4));
        assert_eq!(o0[12], vec![1, 0, 1, 2]);
    }

    #[test]
    fn reordered_grid_row_labels() {
        let labels: Vec<String> = pair_grid(QUASI_A)
            .row_labels
            .iter()
            .map(|(p, s)| format!("{p}{s}"))
            .collect();
        assert_eq!(
            labels,
            ["00", "10", "20", "30", "01", "11", "21", "31", "02", "12", "22", "32"]
        );
    }
}
