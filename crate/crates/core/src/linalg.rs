//! Fraction-free elimination over exact integral domains.
//!
//! One Bareiss-style routine serves both integer matrices (sampled ranks)
//! and polynomial matrices (generic ranks). Every division it performs is
//! exact; a failed division is reported as an internal error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// The operations the elimination needs from an integral domain.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Option<Self>;
    /// Rough cost measure used to prefer small pivots.
    fn size(&self) -> usize;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn size(&self) -> usize {
        self.bits() as usize
    }
}

impl ExactRing for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        Poly::div_exact(self, d)
    }
    fn size(&self) -> usize {
        self.num_terms()
    }
}

/// Result of a fraction-free elimination.
#[derive(Debug, Clone)]
pub struct Elimination<R> {
    pub rank: usize,
    /// `(row, column)` of each pivot, rows `0..rank` in order.
    pub pivots: Vec<(usize, usize)>,
    pub matrix: Vec<Vec<R>>,
    /// Last pivot: a nonzero `rank x rank` minor. After full reduction every
    /// pivot entry equals it.
    pub det: R,
}

/// Fraction-free elimination. With `reduce_above`, entries above pivots are
/// cleared too (Gauss–Jordan form), which makes kernel extraction direct.
pub fn eliminate<R: ExactRing>(mut m: Vec<Vec<R>>, reduce_above: bool) -> Result<Elimination<R>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = R::one();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].size())
        else {
            continue;
        };
        m.swap(rank, pr);
        let pivot = m[rank][c].clone();
        let targets: Vec<usize> = if reduce_above {
            (0..rows).filter(|&i| i != rank).collect()
        } else {
            (rank + 1..rows).collect()
        };
        for i in targets {
            let factor = m[i][c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let a = pivot.mul(&m[i][j]);
                let b = if factor.is_zero() || m[rank][j].is_zero() {
                    R::zero()
                } else {
                    factor.mul(&m[rank][j])
                };
                let num = a.sub(&b);
                m[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::internal("inexact division in fraction-free elimination")
                })?;
            }
            m[i][c] = R::zero();
        }
        pivots.push((rank, c));
        prev = pivot;
        rank += 1;
    }
    Ok(Elimination {
        rank,
        pivots,
        matrix: m,
        det: prev,
    })
}

pub fn rank<R: ExactRing>(m: Vec<Vec<R>>) -> Result<usize> {
    Ok(eliminate(m, false)?.rank)
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per non-pivot
/// column, with entries that are minors of `M`.
pub fn kernel<R: ExactRing>(m: Vec<Vec<R>>) -> Result<Vec<Vec<R>>> {
    let cols = m.first().map_or(0, Vec::len);
    let e = eliminate(m, true)?;
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![R::zero(); cols];
        v[f] = e.det.clone();
        for &(row, c) in &e.pivots {
            v[c] = R::zero().sub(&e.matrix[row][f]);
        }
        out.push(v);
    }
    Ok(out)
}

/// `M v` for a matrix and a vector.
pub fn apply<R: ExactRing>(m: &[Vec<R>], v: &[R]) -> Vec<R> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(R::zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(int_matrix(&[&[1, 2], &[2, 4]])).unwrap(), 1);
        assert_eq!(rank(int_matrix(&[&[0, 1], &[1, 0]])).unwrap(), 2);
        assert_eq!(rank(int_matrix(&[&[0, 0], &[0, 0]])).unwrap(), 0);
        assert_eq!(rank(int_matrix(&[&[5]])).unwrap(), 1);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = int_matrix(&[&[1, 2, 3, 4], &[2, 4, 7, 9], &[3, 6, 10, 13]]);
        let ker = kernel(m.clone()).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(apply(&m, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn polynomial_kernel() {
        let x = Poly::var(0);
        let t = Poly::var(1);
        let m = vec![vec![x.clone(), t.clone()]];
        let ker = kernel(m.clone()).unwrap();
        assert_eq!(ker.len(), 1);
        assert!(apply(&m, &ker[0]).iter().all(|p| p.is_zero()));
    }

    /// Plain cross-multiplying elimination with content removal.
    fn reference_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<i128>> = m
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..rows {
                let f = a[i][c];
                let g = a[r][c];
                for j in 0..cols {
                    a[i][j] = a[i][j] * g - a[r][j] * f;
                }
                let content = a[i].iter().fold(0i128, |acc, &v| num_integer::gcd(acc, v));
                if content > 1 {
                    for v in a[i].iter_mut() {
                        *v /= content;
                    }
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn rank_matches_reference(m in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..5)) {
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(rank(big.clone()).unwrap(), reference_rank(&m));
            let ker = kernel(big.clone()).unwrap();
            prop_assert_eq!(ker.len() + reference_rank(&m), 4);
            for v in &ker {
                prop_assert!(apply(&big, v).iter().all(Zero::is_zero));
            }
        }
    }
}
