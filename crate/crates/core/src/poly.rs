//! Sparse multivariate polynomials over `Z` in at most 16 variables.
//!
//! A monomial is packed into a `u128`, one byte per exponent with variable 0
//! in the most significant byte, so integer order on the packed key is
//! lexicographic order with `v0 > v1 > ...`. Terms are kept sorted by
//! decreasing monomial with no zero coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const MAX_VARS: usize = 16;

pub type Monomial = u128;

#[inline]
fn shift(var: usize) -> u32 {
    ((MAX_VARS - 1 - var) * 8) as u32
}

/// Exponent of `var` in the packed monomial.
#[inline]
pub fn exponent(m: Monomial, var: usize) -> u32 {
    ((m >> shift(var)) & 0xff) as u32
}

/// Packed monomial `v_var^e`.
#[inline]
pub fn var_power(var: usize, e: u32) -> Monomial {
    assert!(var < MAX_VARS && e < 256);
    (e as u128) << shift(var)
}

#[inline]
fn divides(a: Monomial, b: Monomial) -> bool {
    (0..MAX_VARS).all(|v| exponent(a, v) <= exponent(b, v))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(0, c)],
            }
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(v: usize) -> Self {
        Poly {
            terms: vec![(var_power(v, 1), BigInt::one())],
        }
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    fn from_unsorted(mut terms: Vec<(Monomial, BigInt)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| exponent(*m, var))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigInt) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma + mb, ca * cb));
            }
        }
        Self::from_unsorted(raw)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self / d` when `d` divides `self` exactly; `None` otherwise.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?.clone();
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, x) in &self.terms {
                let (q, r) = x.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                terms.push((*m, q));
            }
            return Some(Poly { terms });
        }
        // remainder kept in a map so each step costs O(|d| log |rem|)
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if m < dm || !divides(dm, m) {
                return None;
            }
            let (qc, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = m - dm;
            for (mm, cc) in &d.terms[1..] {
                let key = mm + qm;
                let delta = cc * &qc;
                match rem.entry(key) {
                    Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Gcd of the integer coefficients, with the sign of the leading term.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
        }
        if let Some((_, c)) = self.leading() {
            if c.is_negative() {
                g = -g;
            }
        }
        g
    }

    /// Substitutes integer values for the listed variables.
    pub fn substitute(&self, values: &[(usize, BigInt)]) -> Poly {
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mm = *m;
            let mut cc = c.clone();
            for (v, val) in values {
                let e = exponent(mm, *v);
                if e > 0 {
                    cc *= num_traits::pow(val.clone(), e as usize);
                    mm -= var_power(*v, e);
                }
            }
            raw.push((mm, cc));
        }
        Self::from_unsorted(raw)
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: usize, k: u32) -> Poly {
        let mask = var_power(var, k);
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| exponent(*m, var) == k)
                .map(|(m, c)| (m - mask, c.clone()))
                .collect(),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (v, name) in names.iter().enumerate().take(MAX_VARS) {
                match exponent(*m, v) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, abs.to_string());
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|v| format!("v{v}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// `∏ (v_var - c_j)` expanded, as used for `∏ (x - t_j)^{e_j}`.
pub fn linear_product(factors: &[(Poly, u32)]) -> Poly {
    factors
        .iter()
        .fold(Poly::one(), |acc, (f, e)| acc.mul(&f.pow(*e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn t(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn difference_of_squares() {
        let a = x().sub(&t(1));
        let b = x().add(&t(1));
        let p = a.mul(&b);
        assert_eq!(p, x().mul(&x()).sub(&t(1).mul(&t(1))));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!(p.div_exact(&x()), None);
    }

    #[test]
    fn substitution_and_coefficients() {
        let p = x().sub(&t(1)).mul(&x().sub(&t(2)));
        assert_eq!(p.coefficient_of(0, 1), t(1).add(&t(2)).neg());
        assert_eq!(p.coefficient_of(0, 0), t(1).mul(&t(2)));
        let q = p.substitute(&[(1, BigInt::from(2)), (2, BigInt::from(3))]);
        assert_eq!(q.coefficient_of(0, 0), Poly::constant(6));
    }

    #[test]
    fn content_and_display() {
        let p = x().scale(&BigInt::from(-6)).add(&Poly::constant(4));
        assert_eq!(p.content(), BigInt::from(-2));
        let names: Vec<String> = vec!["x".into(), "t1".into()];
        assert_eq!(p.display_with(&names), "-6*x + 4");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..6), 0..6).prop_map(|ts| {
            Poly::from_unsorted(
                ts.into_iter()
                    .map(|(a, b, c, k)| {
                        (
                            var_power(0, a) + var_power(1, b) + var_power(2, c),
                            BigInt::from(k),
                        )
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = a.mul(&b);
            prop_assert_eq!(p.div_exact(&b), Some(a.clone()));
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }
    }
}
