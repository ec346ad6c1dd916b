//! Latin squares and sets of mutually orthogonal Latin squares.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, GaloisField};

/// An order-`v` Latin square over the symbols `0..v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    /// Validates `rows` as a Latin square. Range is checked before rows, rows before columns.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyGrid);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: order,
                });
            }
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &symbol) in row.iter().enumerate() {
                if symbol >= order {
                    return Err(Error::SymbolOutOfRange {
                        row: r,
                        col: c,
                        symbol,
                        order,
                    });
                }
            }
        }
        let mut seen = vec![false; order];
        for (r, row) in rows.iter().enumerate() {
            seen.fill(false);
            for &symbol in row {
                if std::mem::replace(&mut seen[symbol], true) {
                    return Err(Error::RepeatInRow { row: r, symbol });
                }
            }
        }
        for c in 0..order {
            seen.fill(false);
            for row in &rows {
                let symbol = row[c];
                if std::mem::replace(&mut seen[symbol], true) {
                    return Err(Error::RepeatInColumn { col: c, symbol });
                }
            }
        }
        Ok(Self {
            order,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a square from a cell function without validation; callers guarantee Latinity.
    pub(crate) fn from_fn_unchecked(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let cells = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.rows().map(<[usize]>::to_vec).collect()
    }
}

impl TryFrom<Vec<Vec<usize>>> for LatinSquare {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<LatinSquare> for Vec<Vec<usize>> {
    fn from(sq: LatinSquare) -> Self {
        sq.to_rows()
    }
}

/// Validates a raw grid as a Latin square.
pub fn validate_latin(grid: Vec<Vec<usize>>) -> Result<LatinSquare> {
    LatinSquare::new(grid)
}

/// True iff superimposing `a` on `b` yields every ordered pair exactly once.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    if a.order != b.order {
        return Err(Error::OrderMismatch {
            left: a.order,
            right: b.order,
        });
    }
    let v = a.order;
    let mut seen = vec![false; v * v];
    for (x, y) in a.cells.iter().zip(&b.cells) {
        if std::mem::replace(&mut seen[x * v + y], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A list of pairwise orthogonal Latin squares of one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MolsSetRepr", into = "MolsSetRepr")]
pub struct MolsSet {
    order: usize,
    squares: Vec<LatinSquare>,
}

#[derive(Serialize, Deserialize)]
struct MolsSetRepr {
    order: usize,
    squares: Vec<LatinSquare>,
}

impl TryFrom<MolsSetRepr> for MolsSet {
    type Error = Error;

    fn try_from(r: MolsSetRepr) -> Result<Self> {
        let set = MolsSet::new(r.squares)?;
        if set.order != r.order {
            return Err(Error::OrderMismatch {
                left: r.order,
                right: set.order,
            });
        }
        Ok(set)
    }
}

impl From<MolsSet> for MolsSetRepr {
    fn from(s: MolsSet) -> Self {
        Self {
            order: s.order,
            squares: s.squares,
        }
    }
}

impl MolsSet {
    /// Checks every pair exhaustively.
    pub fn new(squares: Vec<LatinSquare>) -> Result<Self> {
        let order = squares.first().map(LatinSquare::order).ok_or(Error::EmptyGrid)?;
        for sq in &squares {
            if sq.order != order {
                return Err(Error::OrderMismatch {
                    left: order,
                    right: sq.order,
                });
            }
        }
        for i in 0..squares.len() {
            for j in i + 1..squares.len() {
                if !are_orthogonal(&squares[i], &squares[j])? {
                    return Err(Error::NotOrthogonal { first: i, second: j });
                }
            }
        }
        Ok(Self { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// The first and last squares, the pair the worked 12x12 example uses.
    pub fn first_and_last(&self) -> Option<(&LatinSquare, &LatinSquare)> {
        match self.squares.as_slice() {
            [first, .., last] => Some((first, last)),
            _ => None,
        }
    }
}

/// Squares `k = 1..p-1` with `entry(i, j) = (k*i + j) mod p`.
pub fn cyclic_mols(p: usize) -> Result<MolsSet> {
    if !gf::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 {
        return Err(Error::OrderTooSmall(p));
    }
    let squares = (1..p)
        .map(|k| LatinSquare::from_fn_unchecked(p, |i, j| (k * i + j) % p))
        .collect();
    Ok(MolsSet { order: p, squares })
}

/// Squares `a = 1..q-1` with `entry(x, y) = a*x + y` in GF(q).
pub fn galois_mols(q: usize) -> Result<MolsSet> {
    gf::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q < 3 {
        return Err(Error::OrderTooSmall(q));
    }
    let field = GaloisField::new(q)?;
    let squares = (1..q)
        .map(|a| LatinSquare::from_fn_unchecked(q, |x, y| field.add(field.mul(a, x), y)))
        .collect();
    Ok(MolsSet { order: q, squares })
}

/// Cyclic construction for primes, field construction for other prime powers.
pub fn generate_mols(order: usize) -> Result<MolsSet> {
    if gf::is_prime(order) {
        cyclic_mols(order)
    } else {
        galois_mols(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(rows: &[&[usize]]) -> LatinSquare {
        LatinSquare::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validate_accepts_order_three_and_one() {
        let a = sq(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]);
        assert_eq!(a.order(), 3);
        assert_eq!(sq(&[&[0]]).order(), 1);
    }

    #[test]
    fn validate_reports_first_violation() {
        assert_eq!(
            validate_latin(vec![vec![0, 1], vec![0, 1]]),
            Err(Error::RepeatInColumn { col: 0, symbol: 0 })
        );
        assert_eq!(
            validate_latin(vec![vec![0, 0], vec![1, 1]]),
            Err(Error::RepeatInRow { row: 0, symbol: 0 })
        );
        assert!(matches!(
            validate_latin(vec![vec![0, 1], vec![1]]),
            Err(Error::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            validate_latin(vec![vec![0, 2], vec![1, 0]]),
            Err(Error::SymbolOutOfRange {
                row: 0,
                col: 1,
                symbol: 2,
                ..
            })
        ));
        assert_eq!(validate_latin(vec![]), Err(Error::EmptyGrid));
    }

    #[test]
    fn square_is_not_orthogonal_to_itself() {
        for p in [3, 5, 7] {
            for s in cyclic_mols(p).unwrap().squares() {
                assert!(!are_orthogonal(s, s).unwrap());
            }
        }
    }

    #[test]
    fn orthogonality_needs_equal_orders() {
        let a = sq(&[&[0]]);
        let b = cyclic_mols(3).unwrap().squares()[0].clone();
        assert_eq!(are_orthogonal(&a, &b), Err(Error::OrderMismatch { left: 1, right: 3 }));
    }

    #[test]
    fn cyclic_three_is_the_printed_pair() {
        let set = cyclic_mols(3).unwrap();
        assert_eq!(
            set.squares()[0].to_rows(),
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
        );
        assert_eq!(
            set.squares()[1].to_rows(),
            vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]
        );
    }

    #[test]
    fn cyclic_five_is_complete() {
        let set = cyclic_mols(5).unwrap();
        assert_eq!(set.len(), 4);
        let s = set.squares();
        let mut pairs = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(are_orthogonal(&s[i], &s[j]).unwrap());
                pairs += 1;
            }
        }
        assert_eq!(pairs, 6);
    }

    #[test]
    fn galois_sets_are_latin_and_orthogonal() {
        for (q, expected_pairs) in [(4, 3), (8, 21), (9, 28), (16, 105), (25, 276), (27, 325)] {
            let set = galois_mols(q).unwrap();
            assert_eq!(set.len(), q - 1);
            let mut pairs = 0;
            for (i, a) in set.squares().iter().enumerate() {
                LatinSquare::new(a.to_rows()).unwrap();
                for b in &set.squares()[i + 1..] {
                    assert!(are_orthogonal(a, b).unwrap());
                    pairs += 1;
                }
            }
            assert_eq!(pairs, expected_pairs);
        }
    }

    #[test]
    fn galois_agrees_with_cyclic_for_primes() {
        for p in [3, 5, 7, 11] {
            assert_eq!(cyclic_mols(p).unwrap(), galois_mols(p).unwrap());
        }
    }

    #[test]
    fn refusals() {
        assert_eq!(cyclic_mols(2), Err(Error::OrderTooSmall(2)));
        assert_eq!(cyclic_mols(6), Err(Error::NotPrime(6)));
        assert_eq!(galois_mols(6), Err(Error::NotPrimePower(6)));
        assert_eq!(galois_mols(2), Err(Error::OrderTooSmall(2)));
        assert_eq!(galois_mols(32), Err(Error::UnsupportedOrder(32)));
        assert!(generate_mols(6).is_err());
        assert!(generate_mols(2).is_err());
        assert_eq!(generate_mols(9).unwrap().len(), 8);
    }

    #[test]
    fn mols_set_rejects_non_orthogonal() {
        let a = cyclic_mols(3).unwrap().squares()[0].clone();
        assert_eq!(
            MolsSet::new(vec![a.clone(), a]),
            Err(Error::NotOrthogonal { first: 0, second: 1 })
        );
    }
}
