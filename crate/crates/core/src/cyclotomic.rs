//! Exact arithmetic in `Z[ζ_e]`, elements stored as integer coefficient
//! vectors of length `φ(e)` reduced modulo the `e`-th cyclotomic polynomial.
//! The reduced vector is a unique representative, so equality is vector
//! equality.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// The ring `Z[ζ_e]` with a precomputed reduction table for `x^k`, `k < e`.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    e: usize,
    phi: usize,
    /// `powers[k]` is `ζ^k` reduced; length `e`.
    powers: Arc<Vec<Vec<i64>>>,
}

/// An element of `Z[ζ_e]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cyclo(pub Vec<i64>);

impl CyclotomicField {
    pub fn new(e: usize) -> Self {
        assert!(e >= 1);
        let poly = cyclotomic_polynomial(e);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(e);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..e {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic polynomial
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
            cur = next;
        }
        CyclotomicField {
            e,
            phi,
            powers: Arc::new(powers),
        }
    }

    pub fn exponent(&self) -> usize {
        self.e
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo(vec![0; self.phi])
    }

    pub fn int(&self, v: i64) -> Cyclo {
        let mut c = self.zero();
        c.0[0] = v;
        c
    }

    /// `ζ^k`.
    pub fn root(&self, k: i64) -> Cyclo {
        Cyclo(self.powers[k.rem_euclid(self.e as i64) as usize].clone())
    }

    /// `Σ_k coeffs[k] ζ^k` for a coefficient vector of length `e`.
    pub fn from_power_coeffs(&self, coeffs: &[i64]) -> Cyclo {
        let mut out = self.zero();
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (o, p) in out.0.iter_mut().zip(self.powers[k % self.e].iter()) {
                    *o += c * p;
                }
            }
        }
        out
    }

    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, a: &Cyclo, s: i64) -> Cyclo {
        Cyclo(a.0.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        // the product has degree < 2φ-1; reduce every x^k via the power table
        let mut raw = vec![0i64; 2 * self.phi];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        self.from_power_coeffs(&raw)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self, a: &Cyclo) -> Cyclo {
        let mut raw = vec![0i64; self.e];
        for (k, &c) in a.0.iter().enumerate() {
            raw[(self.e - k % self.e) % self.e] += c;
        }
        self.from_power_coeffs(&raw)
    }

    /// The Galois automorphism `ζ ↦ ζ^k` (`gcd(k, e) = 1`).
    pub fn galois(&self, a: &Cyclo, k: i64) -> Cyclo {
        let mut raw = vec![0i64; self.e];
        for (i, &c) in a.0.iter().enumerate() {
            raw[(i as i64 * k).rem_euclid(self.e as i64) as usize] += c;
        }
        self.from_power_coeffs(&raw)
    }

    /// The rational integer represented by `a`, if it is one.
    pub fn as_integer(&self, a: &Cyclo) -> Option<i64> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0])
        } else {
            None
        }
    }
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}
