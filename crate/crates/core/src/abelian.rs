//! Abelian covers `w_i^N = ∏_j (x - t_j)^{r̃_ij}` of the line: eigenspace
//! dimensions, the explicit eigenbasis of holomorphic differentials, and the
//! multiplication map on invariant symmetric squares.
//!
//! Characters are labelled by `n ∈ (Z/NZ)^m` up to the annihilator of the
//! column span; each is represented by its lexicographically least label and
//! determined by `α(n) = n·A mod N`. A basis differential of character `n` is
//! `x^ν w^n ∏_j (x - t_j)^{⌊-α̃_j/N⌋} dx` with `0 ≤ ν < d_n`.
//!
//! For a product of two forms whose characters multiply to the trivial one,
//! `w^{n+n'}` is a constant times a product of `(x - t_j)`, and the image is
//! `x^k ∏_j (x - t_j)^{E_j} (dx)²` up to a nonzero constant. Constants only
//! rescale columns, so ranks are computed on these normalised images.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{sym2_invariant_dimension, Part};
use crate::datum::{abelian_columns, hodge_decomposition, validate_datum, PrymDatum};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg;
use crate::poly::Poly;

/// Largest product system handled symbolically.
pub const MAX_SYMBOLIC_PRODUCTS: usize = 12;
/// Largest number of branch points handled symbolically.
pub const MAX_SYMBOLIC_POINTS: usize = 12;

/// The matrix of an abelian cover together with its central involution.
#[derive(Debug, Clone, Serialize)]
pub struct CoverMatrix {
    pub modulus: u32,
    /// `m x r`, entries reduced mod `N`; column `j` is the local monodromy
    /// at `t_j`.
    pub matrix: Vec<Vec<u32>>,
    /// Coordinates of `σ` (each `0` or `N/2`).
    pub sigma: Vec<u32>,
    /// Coordinates negated by `σ`: `{i : σ_i = N/2}`.
    pub parity_mask: Vec<usize>,
    /// `|G̃|`, the order of the column span.
    pub order: usize,
}

impl CoverMatrix {
    pub fn new(modulus: u32, matrix: Vec<Vec<u32>>, sigma: Vec<u32>) -> Result<Self> {
        let group = FiniteGroup::abelian_from_columns(modulus, &matrix)?;
        for row in &matrix {
            if row.iter().map(|&v| u64::from(v)).sum::<u64>() % u64::from(modulus) != 0 {
                return Err(Error::ProductNotIdentity);
            }
        }
        if sigma.len() != matrix.len() {
            return Err(Error::parse(
                "sigma",
                "length differs from the number of matrix rows",
            ));
        }
        if group.index_of_coords(&sigma).is_none() {
            return Err(Error::parse("sigma", "not in the span of the columns"));
        }
        let half = modulus / 2;
        if !modulus.is_multiple_of(2)
            || sigma.iter().any(|&s| s != 0 && s != half)
            || sigma.iter().all(|&s| s == 0)
        {
            return Err(Error::SigmaNotCentralInvolution);
        }
        let parity_mask = (0..sigma.len()).filter(|&i| sigma[i] == half).collect();
        Ok(CoverMatrix {
            modulus,
            matrix,
            sigma,
            parity_mask,
            order: group.order(),
        })
    }

    /// Cover matrix of an abelian datum; `None` for non-abelian groups.
    pub fn from_datum(d: &PrymDatum) -> Result<Option<Self>> {
        let Some((modulus, columns)) = abelian_columns(d) else {
            return Ok(None);
        };
        let m = columns[0].len();
        let matrix: Vec<Vec<u32>> = (0..m)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        let sigma = match d.group.coords(d.sigma) {
            Some(c) => c.to_vec(),
            None => {
                let (_, coords) = d
                    .group
                    .abelian_coordinates()
                    .ok_or_else(|| Error::internal("abelian group without coordinates"))?;
                coords[d.sigma].clone()
            }
        };
        Self::new(modulus, matrix, sigma).map(Some)
    }

    pub fn r(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn m(&self) -> usize {
        self.matrix.len()
    }

    /// The entrywise lift `r̃_ij ∈ [0, N)`.
    pub fn lift(&self) -> Vec<Vec<i64>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|&v| i64::from(v)).collect())
            .collect()
    }

    /// `α̃(n) = n·Ã` over the integers.
    pub fn alpha_lift(&self, n: &[u32]) -> Vec<i64> {
        (0..self.r())
            .map(|j| {
                (0..self.m())
                    .map(|i| i64::from(n[i]) * i64::from(self.matrix[i][j]))
                    .sum()
            })
            .collect()
    }

    /// `α(n) = n·A mod N`.
    pub fn alpha(&self, n: &[u32]) -> Vec<u32> {
        let nn = i64::from(self.modulus);
        self.alpha_lift(n)
            .into_iter()
            .map(|a| a.rem_euclid(nn) as u32)
            .collect()
    }

    /// `χ_n(σ) = -1`, i.e. `Σ_{i ∈ K} n_i` is odd.
    pub fn is_odd(&self, n: &[u32]) -> bool {
        self.parity_mask
            .iter()
            .map(|&i| u64::from(n[i]))
            .sum::<u64>()
            % 2
            == 1
    }

    /// Least labels of all characters, in increasing order.
    pub fn characters(&self) -> Vec<Vec<u32>> {
        let m = self.m();
        let mut seen: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
        let mut n = vec![0u32; m];
        'walk: loop {
            let a = self.alpha(&n);
            seen.entry(a).or_insert_with(|| n.clone());
            if seen.len() == self.order {
                break;
            }
            let mut i = m;
            loop {
                if i == 0 {
                    break 'walk;
                }
                i -= 1;
                n[i] += 1;
                if n[i] < self.modulus {
                    break;
                }
                n[i] = 0;
            }
        }
        let mut labels: Vec<Vec<u32>> = seen.into_values().collect();
        labels.sort();
        labels
    }

    /// The datum whose tuple is the columns of the matrix.
    pub fn to_datum(&self) -> Result<PrymDatum> {
        let group = FiniteGroup::abelian_from_columns(self.modulus, &self.matrix)?;
        let tuple = (0..self.r())
            .map(|j| {
                let col: Vec<u32> = self.matrix.iter().map(|row| row[j]).collect();
                group
                    .index_of_coords(&col)
                    .expect("column lies in its span")
            })
            .collect::<Vec<_>>();
        let sigma = group
            .index_of_coords(&self.sigma)
            .ok_or(Error::SigmaNotCentralInvolution)?;
        validate_datum(&group, &tuple, sigma)
    }
}

/// `d_n = -1 + Σ_j ⟨-α_j/N⟩`, and `0` for the trivial character.
pub fn eigen_dim(c: &CoverMatrix, n: &[u32]) -> Result<u64> {
    let alpha = c.alpha(n);
    if alpha.iter().all(|&a| a == 0) {
        return Ok(0);
    }
    let nn = i64::from(c.modulus);
    let num: i64 = alpha.iter().map(|&a| (nn - i64::from(a)) % nn).sum::<i64>() - nn;
    if num % nn != 0 || num < 0 {
        return Err(Error::internal(format!(
            "eigenspace dimension of character {n:?} is not a nonnegative integer"
        )));
    }
    Ok((num / nn) as u64)
}

/// `(n, d_n)` for every character, in label order.
pub fn eigen_dims(c: &CoverMatrix) -> Result<Vec<(Vec<u32>, u64)>> {
    c.characters()
        .into_iter()
        .map(|n| {
            let d = eigen_dim(c, &n)?;
            Ok((n, d))
        })
        .collect()
}

/// Exponent data of the basis differential `ω_{n,ν}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormExponent {
    pub n: Vec<u32>,
    pub alpha: Vec<u32>,
    pub nu: u32,
    /// `⌊-α̃_j/N⌋` per branch point.
    pub floor_exps: Vec<i64>,
}

/// Basis of `V₋`: all `ω_{n,ν}` with `n` odd on `σ` and `ν < d_n`, ordered
/// by label and then `ν`.
pub fn anti_invariant_basis(c: &CoverMatrix) -> Result<Vec<FormExponent>> {
    let nn = i64::from(c.modulus);
    let mut out = Vec::new();
    for (n, d) in eigen_dims(c)? {
        if d == 0 || !c.is_odd(&n) {
            continue;
        }
        let lift = c.alpha_lift(&n);
        let floor_exps: Vec<i64> = lift.iter().map(|&a| (-a).div_euclid(nn)).collect();
        for nu in 0..d as u32 {
            out.push(FormExponent {
                n: n.clone(),
                alpha: c.alpha(&n),
                nu,
                floor_exps: floor_exps.clone(),
            });
        }
    }
    Ok(out)
}

/// One basis element `ω_i ⊙ ω_j` of `(S²V₋)^G̃` and its image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductPair {
    /// Indices into the basis, `i ≤ j`.
    pub i: usize,
    pub j: usize,
    pub n: Vec<u32>,
    pub n_dual: Vec<u32>,
    /// Power of `x` in the image.
    pub k: u32,
    /// Exponents of `(x - t_j)` in the image.
    pub exps: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductSystem {
    pub r: usize,
    pub basis: Vec<FormExponent>,
    pub pairs: Vec<ProductPair>,
    /// Per-branch-point minimum of the exponents, subtracted to clear
    /// denominators.
    pub common_shift: Vec<i64>,
}

/// Enumerates `(S²V₋)^G̃` and reduces every product to `(k, E)` form; the
/// count is checked against the character-theoretic dimension.
pub fn build_product_system(c: &CoverMatrix) -> Result<ProductSystem> {
    let basis = anti_invariant_basis(c)?;
    let nn = i64::from(c.modulus);
    let r = c.r();
    let mut by_alpha: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (idx, f) in basis.iter().enumerate() {
        by_alpha.entry(f.alpha.clone()).or_default().push(idx);
    }
    let mut pairs = Vec::new();
    for i in 0..basis.len() {
        let fi = &basis[i];
        let dual: Vec<u32> = fi
            .alpha
            .iter()
            .map(|&a| ((nn - i64::from(a)) % nn) as u32)
            .collect();
        let Some(partners) = by_alpha.get(&dual) else {
            continue;
        };
        for &j in partners {
            if j < i {
                continue;
            }
            let fj = &basis[j];
            let li = c.alpha_lift(&fi.n);
            let lj = c.alpha_lift(&fj.n);
            let mut exps = Vec::with_capacity(r);
            for t in 0..r {
                let s = li[t] + lj[t];
                if s % nn != 0 {
                    return Err(Error::internal("product character is not trivial"));
                }
                exps.push(fi.floor_exps[t] + fj.floor_exps[t] + s / nn);
            }
            let k = fi.nu + fj.nu;
            let total: i64 = exps.iter().sum::<i64>() + i64::from(k);
            if total > -4 {
                return Err(Error::internal(format!(
                    "product ω{}⊙ω{} is not regular at infinity (k + ΣE = {total})",
                    i + 1,
                    j + 1
                )));
            }
            pairs.push(ProductPair {
                i,
                j,
                n: fi.n.clone(),
                n_dual: fj.n.clone(),
                k,
                exps,
            });
        }
    }
    let d = c.to_datum()?;
    let v = hodge_decomposition(&d)?;
    let dim = sym2_invariant_dimension(&v, Part::Minus)?;
    if dim != pairs.len() as u64 {
        return Err(Error::internal(format!(
            "product system has {} elements but dim (S²V₋)^G̃ = {dim}",
            pairs.len()
        )));
    }
    let common_shift = (0..r)
        .map(|t| pairs.iter().map(|p| p.exps[t]).min().unwrap_or(0))
        .collect();
    Ok(ProductSystem {
        r,
        basis,
        pairs,
        common_shift,
    })
}

impl ProductSystem {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Exponents of `(x - t_j)` after multiplying by `∏ (x - t_j)^{-shift_j}`.
    pub fn cleared_exps(&self, idx: usize) -> Vec<u32> {
        self.pairs[idx]
            .exps
            .iter()
            .zip(&self.common_shift)
            .map(|(e, s)| (e - s) as u32)
            .collect()
    }

    /// Cleared image as a polynomial in `x` (variable 0) and `t_j`
    /// (variable `j`).
    pub fn cleared_poly(&self, idx: usize) -> Poly {
        let x = Poly::var(0);
        let mut p = x.pow(self.pairs[idx].k);
        for (j, e) in self.cleared_exps(idx).into_iter().enumerate() {
            if e > 0 {
                p = p.mul(&x.sub(&Poly::var(j + 1)).pow(e));
            }
        }
        p
    }

    fn max_x_degree(&self) -> u32 {
        (0..self.len())
            .map(|i| self.pairs[i].k + self.cleared_exps(i).iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient matrix (rows: powers of `x`, columns: products) with the
    /// branch points specialised to `t`. Rational points are cleared by
    /// scaling each factor `(x - p/q)` to `(q x - p)`.
    pub fn matrix_at(&self, t: &[BigRational]) -> Result<Vec<Vec<BigInt>>> {
        if t.len() != self.r {
            return Err(Error::parse(
                "sample",
                format!("expected {} points", self.r),
            ));
        }
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                if t[a] == t[b] {
                    return Err(Error::RepeatedSample);
                }
            }
        }
        let rows = self.max_x_degree() as usize + 1;
        let mut m = vec![vec![BigInt::zero(); self.len()]; rows];
        for idx in 0..self.len() {
            // dense coefficients in x, constant term first
            let mut coeffs = vec![BigInt::zero(); self.pairs[idx].k as usize];
            coeffs.push(BigInt::one());
            for (j, e) in self.cleared_exps(idx).into_iter().enumerate() {
                let (p, q) = (t[j].numer().clone(), t[j].denom().clone());
                for _ in 0..e {
                    let mut next = vec![BigInt::zero(); coeffs.len() + 1];
                    for (d, c) in coeffs.iter().enumerate() {
                        next[d + 1] += c * &q;
                        next[d] -= c * &p;
                    }
                    coeffs = next;
                }
            }
            for (d, c) in coeffs.into_iter().enumerate() {
                m[d][idx] = c;
            }
        }
        Ok(m)
    }

    /// Coefficient matrix over `Z[t_1..t_r]`.
    pub fn symbolic_matrix(&self) -> Vec<Vec<Poly>> {
        let rows = self.max_x_degree() as usize + 1;
        let mut m = vec![vec![Poly::zero(); self.len()]; rows];
        for idx in 0..self.len() {
            let p = self.cleared_poly(idx);
            for (d, row) in m.iter_mut().enumerate() {
                row[idx] = p.coefficient_of(0, d as u32);
            }
        }
        m
    }

    /// Name of the `idx`-th product, e.g. `a24` for `ω_2 ⊙ ω_4`.
    pub fn pair_name(&self, idx: usize) -> String {
        let p = &self.pairs[idx];
        if self.basis.len() >= 10 {
            format!("a{},{}", p.i + 1, p.j + 1)
        } else {
            format!("a{}{}", p.i + 1, p.j + 1)
        }
    }

    pub fn to_json(&self, sample: Option<&[BigRational]>) -> Result<serde_json::Value> {
        let mut v = serde_json::to_value(self).map_err(|e| Error::internal(e.to_string()))?;
        let names: Vec<String> = (0..self.len()).map(|i| self.pair_name(i)).collect();
        v["names"] = serde_json::json!(names);
        let cleared: Vec<Vec<u32>> = (0..self.len()).map(|i| self.cleared_exps(i)).collect();
        v["cleared_exps"] = serde_json::json!(cleared);
        if let Some(t) = sample {
            let m = self.matrix_at(t)?;
            let text: Vec<Vec<String>> = m
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect();
            v["sample"] = serde_json::json!(t.iter().map(ToString::to_string).collect::<Vec<_>>());
            v["matrix"] = serde_json::json!(text);
        }
        Ok(v)
    }
}

/// Exact rank of the multiplication map with branch points at `t`.
pub fn rank_at_sample(p: &ProductSystem, t: &[BigRational]) -> Result<usize> {
    if p.is_empty() {
        return Ok(0);
    }
    linalg::rank(p.matrix_at(t)?)
}

/// `count` deterministic samples of `r` distinct integers in `[1, 10⁹]`.
pub fn sample_points(r: usize, seed: u64, count: usize) -> Vec<Vec<i64>> {
    (0..count)
        .map(|s| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ s as u64);
            let mut pts: Vec<i64> = Vec::with_capacity(r);
            while pts.len() < r {
                let v = rng.gen_range(1..=1_000_000_000i64);
                if !pts.contains(&v) {
                    pts.push(v);
                }
            }
            pts
        })
        .collect()
}

pub fn to_rationals(t: &[i64]) -> Vec<BigRational> {
    t.iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect()
}

/// Generic rank over `Q(t_1..t_r)` and a kernel basis with polynomial
/// entries, each verified by re-substitution.
#[derive(Debug, Clone)]
pub struct SymbolicRank {
    pub rank: usize,
    pub kernel: Vec<Vec<Poly>>,
}

/// Generic rank: specialized ranks first, symbolic elimination only on a
/// maximal independent row set unless its kernel fails to verify.
pub fn generic_rank_symbolic(p: &ProductSystem) -> Result<SymbolicRank> {
    check_symbolic_size(p)?;
    if p.is_empty() {
        return Ok(SymbolicRank {
            rank: 0,
            kernel: Vec::new(),
        });
    }
    // A specialization bounds the generic rank from below, and full rank at
    // one point settles it.
    let mut best: Option<(usize, Vec<Vec<BigInt>>)> = None;
    for sample in sample_points(p.r, PROBE_SEED, PROBE_COUNT) {
        let m = p.matrix_at(&to_rationals(&sample))?;
        let rank = linalg::rank(m.clone())?;
        if best.as_ref().is_none_or(|(b, _)| rank > *b) {
            best = Some((rank, m));
        }
    }
    let (lower, at_sample) = best.expect("PROBE_COUNT > 0");
    if lower == p.len() {
        return Ok(SymbolicRank {
            rank: lower,
            kernel: Vec::new(),
        });
    }
    // Rows independent at the sample stay independent generically, so this
    // `lower`-row submatrix has kernel of dimension `len - lower`. Its
    // vectors annihilate the full system exactly when the generic rank is
    // `lower`; otherwise fall back to eliminating every row.
    let rows = independent_rows(&at_sample)?;
    let full = p.symbolic_matrix();
    let sub: Vec<Vec<Poly>> = rows.iter().map(|&i| full[i].clone()).collect();
    let kernel = normalized_kernel(sub)?;
    if kernel.iter().all(|v| verify_kernel_element(p, v)) {
        return Ok(SymbolicRank {
            rank: p.len() - kernel.len(),
            kernel,
        });
    }
    generic_rank_by_elimination(p)
}

/// Generic rank by fraction-free elimination of the whole symbolic matrix.
/// Exact but expensive once the system has more than a handful of products.
pub fn generic_rank_by_elimination(p: &ProductSystem) -> Result<SymbolicRank> {
    check_symbolic_size(p)?;
    if p.is_empty() {
        return Ok(SymbolicRank {
            rank: 0,
            kernel: Vec::new(),
        });
    }
    let kernel = normalized_kernel(p.symbolic_matrix())?;
    for v in &kernel {
        if !verify_kernel_element(p, v) {
            return Err(Error::internal(
                "kernel element does not re-substitute to zero",
            ));
        }
    }
    Ok(SymbolicRank {
        rank: p.len() - kernel.len(),
        kernel,
    })
}

const PROBE_SEED: u64 = 0x9e37_79b9;
const PROBE_COUNT: usize = 2;

fn check_symbolic_size(p: &ProductSystem) -> Result<()> {
    if p.len() > MAX_SYMBOLIC_PRODUCTS || p.r > MAX_SYMBOLIC_POINTS {
        return Err(Error::SymbolicTooLarge(format!(
            "{} products, {} branch points",
            p.len(),
            p.r
        )));
    }
    Ok(())
}

fn normalized_kernel(m: Vec<Vec<Poly>>) -> Result<Vec<Vec<Poly>>> {
    Ok(linalg::kernel(m)?
        .into_iter()
        .map(normalize_kernel_vector)
        .collect())
}

/// Greedy choice of a maximal set of linearly independent rows.
fn independent_rows(m: &[Vec<BigInt>]) -> Result<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..m.len() {
        let mut trial: Vec<Vec<BigInt>> = chosen.iter().map(|&j| m[j].clone()).collect();
        trial.push(m[i].clone());
        if linalg::rank(trial)? == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    Ok(chosen)
}

/// Removes common polynomial factors found among the entries and the
/// integer content; the first nonzero entry gets a positive leading
/// coefficient.
pub fn normalize_kernel_vector(mut v: Vec<Poly>) -> Vec<Poly> {
    loop {
        let mut candidates: Vec<Poly> = v.iter().filter(|e| !e.is_zero()).cloned().collect();
        candidates.sort_by_key(|c| std::cmp::Reverse(c.num_terms()));
        let mut reduced = false;
        for c in candidates {
            if c.as_constant().is_some() {
                continue;
            }
            let divided: Option<Vec<Poly>> = v.iter().map(|e| e.div_exact(&c)).collect();
            if let Some(d) = divided {
                v = d;
                reduced = true;
                break;
            }
        }
        if !reduced {
            break;
        }
    }
    let mut g = BigInt::zero();
    for e in &v {
        g = num_integer::Integer::gcd(&g, &e.content());
    }
    if let Some(first) = v.iter().find(|e| !e.is_zero()) {
        if first.leading().is_some_and(|(_, c)| c.is_negative()) {
            g = -g.abs();
        }
    }
    if !g.is_zero() {
        v = v
            .iter()
            .map(|e| {
                e.div_exact(&Poly::constant(g.clone()))
                    .expect("content divides")
            })
            .collect();
    }
    v
}

/// `Σ_i v_i · P_i(x, t) = 0` in `Z[x, t]`, with each image re-expanded
/// from its exponent data.
pub fn verify_kernel_element(p: &ProductSystem, v: &[Poly]) -> bool {
    if v.len() != p.len() || v.iter().all(Poly::is_zero) {
        return false;
    }
    let mut acc = Poly::zero();
    for (idx, coeff) in v.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let x = Poly::var(0);
        let pair = &p.pairs[idx];
        let mut image = x.pow(pair.k);
        for (j, (&e, &s)) in pair.exps.iter().zip(&p.common_shift).enumerate() {
            image = image.mul(&x.sub(&Poly::var(j + 1)).pow((e - s) as u32));
        }
        acc = acc.add(&coeff.mul(&image));
    }
    acc.is_zero()
}

/// Human-readable kernel element, e.g. `a24 − a33`.
pub fn format_kernel_element(p: &ProductSystem, v: &[Poly]) -> String {
    let names: Vec<String> = std::iter::once("x".to_string())
        .chain((1..=p.r).map(|j| format!("t{j}")))
        .collect();
    let mut out = String::new();
    for (idx, coeff) in v.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let name = p.pair_name(idx);
        let (neg, body) = match coeff.as_constant() {
            Some(c) => {
                let abs = c.abs();
                let body = if abs.is_one() {
                    name
                } else {
                    format!("{abs}·{name}")
                };
                (c.is_negative(), body)
            }
            None => (false, format!("({})·{name}", coeff.display_with(&names))),
        };
        if out.is_empty() {
            if neg {
                out.push('−');
            }
        } else {
            out.push_str(if neg { " − " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> CoverMatrix {
        CoverMatrix::new(10, vec![vec![1, 1, 2, 2, 4]], vec![5]).unwrap()
    }

    #[test]
    fn example_one_eigen_dims() {
        let c = example1();
        let dims: HashMap<Vec<u32>, u64> = eigen_dims(&c).unwrap().into_iter().collect();
        assert_eq!(dims[&vec![1]], 3);
        assert_eq!(dims[&vec![3]], 2);
        assert_eq!(dims[&vec![7]], 1);
        assert_eq!(dims[&vec![9]], 0);
        assert_eq!(dims[&vec![5]], 0);
        assert_eq!(dims.values().sum::<u64>(), 12);
    }

    #[test]
    fn example_one_basis_and_products() {
        let c = example1();
        let basis = anti_invariant_basis(&c).unwrap();
        assert_eq!(basis.len(), 6);
        let p = build_product_system(&c).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.pairs.iter().all(|q| {
            let mut labels = [q.n[0], q.n_dual[0]];
            labels.sort();
            labels == [3, 7]
        }));
        let t = to_rationals(&[2, 3, 5, 7, 11]);
        assert_eq!(rank_at_sample(&p, &t).unwrap(), 2);
        let s = generic_rank_symbolic(&p).unwrap();
        assert_eq!(s.rank, 2);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn repeated_sample_rejected() {
        let p = build_product_system(&example1()).unwrap();
        let t = to_rationals(&[1, 1, 2, 3, 4]);
        assert!(matches!(rank_at_sample(&p, &t), Err(Error::RepeatedSample)));
    }

    #[test]
    fn rational_samples_match_integer_samples() {
        let c = CoverMatrix::new(
            2,
            vec![
                vec![1, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 1],
            ],
            vec![1, 1, 1],
        )
        .unwrap();
        let p = build_product_system(&c).unwrap();
        let t: Vec<BigRational> = (1..=6)
            .map(|j| BigRational::new(BigInt::from(j), BigInt::from(j + 7)))
            .collect();
        assert_eq!(rank_at_sample(&p, &t).unwrap(), 3);
    }

    #[test]
    fn single_product_has_rank_one() {
        // Z/4 with tuple (1,3,1,3) and σ = 2: d_1 = d_3 = 1, one pair
        let c = CoverMatrix::new(4, vec![vec![1, 3, 1, 3]], vec![2]).unwrap();
        let p = build_product_system(&c).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(rank_at_sample(&p, &to_rationals(&[1, 2, 3, 4])).unwrap(), 1);
    }

    #[test]
    fn samples_are_deterministic_and_distinct() {
        let a = sample_points(9, 7, 3);
        assert_eq!(a, sample_points(9, 7, 3));
        for s in &a {
            let mut u = s.clone();
            u.sort();
            u.dedup();
            assert_eq!(u.len(), 9);
        }
        assert_ne!(a[0], a[1]);
    }
}
