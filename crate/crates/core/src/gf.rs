//! Table-driven arithmetic over GF(p^d).
//!
//! Element `i` encodes the polynomial whose coefficients are the base-p digits
//! of `i`, lowest degree first. Extension fields are reduced by a fixed, bundled
//! irreducible polynomial so every table is deterministic.

use crate::error::{Error, Result};

/// Monic irreducible polynomials, coefficients lowest degree first (leading 1 included).
const IRREDUCIBLE: &[(usize, usize, &[usize])] = &[
    // (p, d, coefficients)
    (2, 2, &[1, 1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),    // x^3 + x + 1
    (3, 2, &[1, 0, 1]),       // x^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (5, 2, &[2, 0, 1]),       // x^2 + 2
    (3, 3, &[1, 2, 0, 1]),    // x^3 + 2x + 1
];

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, d)` with `q = p^d`, if `q` is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut d = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: usize,
    d: usize,
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus: Vec<usize> = if d == 1 {
            vec![0, 1]
        } else {
            IRREDUCIBLE
                .iter()
                .find(|(pp, dd, _)| *pp == p && *dd == d)
                .map(|(_, _, c)| c.to_vec())
                .ok_or(Error::UnsupportedOrder(q))?
        };

        let digits = |mut x: usize| -> Vec<usize> {
            let mut v = vec![0; d];
            for c in v.iter_mut() {
                *c = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let sum: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = encode(&sum);

                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0; 2 * d - 1];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                for deg in (d..prod.len()).rev() {
                    let lead = prod[deg];
                    if lead == 0 {
                        continue;
                    }
                    for (k, c) in modulus.iter().enumerate() {
                        let idx = deg - d + k;
                        prod[idx] = (prod[idx] + (p - lead) * c) % p;
                    }
                }
                mul[x * q + y] = encode(&prod[..d]);
            }
        }
        Ok(Self { p, d, q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.q + y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.q + y]
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        if x == 0 {
            return None;
        }
        (1..self.q).find(|&y| self.mul(x, y) == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: &[usize] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(!is_prime(9));
        assert!(is_prime(31));
    }

    #[test]
    fn field_axioms_hold_exhaustively() {
        for &q in ORDERS {
            let f = GaloisField::new(q).unwrap();
            for x in 0..q {
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.mul(x, 1), x);
                assert_eq!(f.mul(x, 0), 0);
                if x != 0 {
                    assert!(f.inverse(x).is_some(), "GF({q}): {x} has no inverse");
                }
                assert!((0..q).any(|y| f.add(x, y) == 0));
                for y in 0..q {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in 0..q {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_matches_hand_table() {
        // x^2 = x + 1: 2*2 = 3, 2*3 = 1, 3*3 = 2
        let f = GaloisField::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn unsupported_and_invalid_orders() {
        assert_eq!(GaloisField::new(32), Err(Error::UnsupportedOrder(32)));
        assert_eq!(GaloisField::new(12), Err(Error::NotPrimePower(12)));
    }
}
