//! Combination coefficients for the low-degree sum condition.
//!
//! For a support of size `s` and a degree bound `ell`, the table holds the
//! integers `alpha(k, i)` defined by the descending recursion
//!
//! ```text
//! alpha(k, ell) = C(s - ell, k - ell)
//! alpha(k, i)   = C(s - i, k - i) - sum over j = i+1..=ell of alpha(k, j) * C(s - i, j - i)
//! ```
//!
//! They are built so that `sum over k of alpha(k, i) q^(s-k) (1-q)^k` has
//! degree at most `ell` for every `i <= ell`; consequently, whenever the
//! subset sums satisfy `a_k = sum over i of alpha(k, i) a_i` for all `k`,
//! the expected polynomial has degree at most `ell`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{binomial, IntPoly};

/// Table of `alpha(k, i)` for `1 <= k <= s`, `1 <= i <= ell`.
#[derive(Clone, Debug)]
pub struct AlphaTable {
    s: usize,
    ell: usize,
    /// Indexed `[k - 1][i - 1]`.
    table: Vec<Vec<BigInt>>,
}

impl AlphaTable {
    /// Requires `1 <= ell <= s`.
    pub fn new(s: usize, ell: usize) -> Result<Self> {
        if ell == 0 || ell > s {
            return Err(Error::InvalidParameter(format!(
                "degree bound must satisfy 1 <= ell <= s, got ell = {ell}, s = {s}"
            )));
        }
        let bin = |n: usize, k: i64| {
            if k < 0 {
                BigInt::zero()
            } else {
                binomial(n, k as usize)
            }
        };
        let mut table = vec![vec![BigInt::zero(); ell]; s];
        for k in 1..=s {
            for i in (1..=ell).rev() {
                let mut val = bin(s - i, k as i64 - i as i64);
                for j in i + 1..=ell {
                    val -= &table[k - 1][j - 1] * bin(s - i, (j - i) as i64);
                }
                table[k - 1][i - 1] = val;
            }
        }
        Ok(Self { s, ell, table })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `alpha(k, i)`; panics outside `1 <= k <= s`, `1 <= i <= ell`.
    pub fn get(&self, k: usize, i: usize) -> &BigInt {
        &self.table[k - 1][i - 1]
    }

    /// The polynomial `sum over k of alpha(k, i) q^(s-k) (1-q)^k`, which has
    /// degree at most `ell` by construction.
    pub fn column_combination(&self, i: usize) -> IntPoly {
        let mut acc = IntPoly::zero();
        for k in 1..=self.s {
            let a = self.get(k, i);
            if a.is_zero() {
                continue;
            }
            acc = &acc + &IntPoly::one_minus_q_to(k).shift(self.s - k).scale(a);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_row_is_binomial() {
        // With ell = 1 every entry is C(s-1, k-1).
        let t = AlphaTable::new(5, 1).unwrap();
        for k in 1..=5 {
            assert_eq!(*t.get(k, 1), binomial(4, k - 1));
        }
    }

    #[test]
    fn known_small_entries() {
        let t = AlphaTable::new(4, 2).unwrap();
        assert_eq!(*t.get(3, 2), BigInt::from(2));
        assert_eq!(*t.get(3, 1), BigInt::from(-3));
        // Entries on the diagonal below the bound are Kronecker deltas.
        assert_eq!(*t.get(1, 1), BigInt::from(1));
        assert_eq!(*t.get(2, 2), BigInt::from(1));
        assert_eq!(*t.get(1, 2), BigInt::from(0));
        assert_eq!(*t.get(2, 1), BigInt::from(0));
    }

    #[test]
    fn column_combination_degree_is_bounded() {
        for s in 1..=8 {
            for ell in 1..=s {
                let t = AlphaTable::new(s, ell).unwrap();
                for i in 1..=ell {
                    let p = t.column_combination(i);
                    assert!(
                        p.degree().is_none_or(|d| d <= ell),
                        "s={s} ell={ell} i={i}: degree {:?}",
                        p.degree()
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(AlphaTable::new(4, 0).is_err());
        assert!(AlphaTable::new(4, 5).is_err());
    }
}
