//! Conditions (A), (B1) and the classification of (B) for a Prym datum.

use std::fmt;

use serde::Serialize;

use crate::abelian::{
    build_product_system, format_kernel_element, generic_rank_symbolic, rank_at_sample,
    sample_points, to_rationals, CoverMatrix,
};
use crate::characters::{sym2_invariant_dimension, Part, RepDecomposition};
use crate::datum::{hodge_decomposition, PrymDatum};
use crate::error::Result;

/// Outcome of the (B) pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BStatus {
    CertifiedByB1,
    CertifiedByB6,
    /// Full rank at `sample`; `None` means the generic (symbolic) rank.
    CertifiedByRank {
        sample: Option<Vec<i64>>,
    },
    /// Generic rank deficient; each kernel element re-substitutes to zero.
    RefutedGeneric {
        rank: usize,
        kernel: Vec<String>,
    },
    Inconclusive,
    /// (A) fails, so (B) is not evaluated.
    NotApplicable,
}

impl BStatus {
    pub fn is_certified(&self) -> bool {
        matches!(
            self,
            BStatus::CertifiedByB1 | BStatus::CertifiedByB6 | BStatus::CertifiedByRank { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            BStatus::CertifiedByB1 => "certified_by_B1",
            BStatus::CertifiedByB6 => "certified_by_b6",
            BStatus::CertifiedByRank { .. } => "certified_by_rank",
            BStatus::RefutedGeneric { .. } => "refuted_generic",
            BStatus::Inconclusive => "inconclusive",
            BStatus::NotApplicable => "not_applicable",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "certified_by_B1" => BStatus::CertifiedByB1,
            "certified_by_b6" => BStatus::CertifiedByB6,
            "certified_by_rank" => BStatus::CertifiedByRank { sample: None },
            "refuted_generic" => BStatus::RefutedGeneric {
                rank: 0,
                kernel: Vec::new(),
            },
            "inconclusive" => BStatus::Inconclusive,
            "not_applicable" => BStatus::NotApplicable,
            _ => return None,
        })
    }
}

impl fmt::Display for BStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub r: usize,
    pub dim_s2: u64,
    pub cond_a: bool,
    pub cond_b1: bool,
    /// Index in the character table of the linear character `χ` with
    /// `(S²V₋)^G̃ = W_χ ⊗ W_{χ⁻¹}`.
    pub b1_witness: Option<usize>,
    pub b_ge_6: bool,
    pub b_status: BStatus,
    /// Ranks at the sampled points, in sampling order, when computed.
    pub sampled_ranks: Vec<usize>,
    pub symbolic_rank: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub allow_symbolic: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            seed: 1,
            trials: 3,
            allow_symbolic: false,
        }
    }
}

/// `(dim (S²V₋)^G̃, dim == r - 3)`.
pub fn check_a(d: &PrymDatum, v: &RepDecomposition) -> Result<(u64, bool)> {
    let dim = sym2_invariant_dimension(v, Part::Minus)?;
    Ok((dim, dim == d.r as u64 - 3))
}

/// Condition (B1) with its witness character.
///
/// Holds when some σ-odd linear `χ ≠ χ⁻¹` has multiplicity 1 in `V₋`, its
/// inverse has multiplicity `r - 3`, and nothing else contributes
/// invariants; or, for `r = 4`, when the single invariant is the square of a
/// one-dimensional σ-odd eigenspace of a real linear character.
pub fn check_b1(d: &PrymDatum, v: &RepDecomposition, dim_s2: u64) -> (bool, Option<usize>) {
    let t = &v.table;
    let target = d.r as u64 - 3;
    if dim_s2 != target {
        return (false, None);
    }
    for (i, ch) in t.characters.iter().enumerate() {
        if !ch.is_linear() || v.sigma_sign[i] != -1 || v.mult[i] != 1 {
            continue;
        }
        if ch.dual != i && v.mult[ch.dual] == target {
            return (true, Some(i));
        }
        if d.r == 4 && ch.dual == i {
            return (true, Some(i));
        }
    }
    (false, None)
}

/// Runs (A), (B1), the `b ≥ 6` rule and, for abelian data, exact ranks of
/// the multiplication map.
pub fn classify_b(d: &PrymDatum, opts: &ClassifyOptions) -> Result<ConditionReport> {
    let v = hodge_decomposition(d)?;
    classify_with(d, &v, opts)
}

pub fn classify_with(
    d: &PrymDatum,
    v: &RepDecomposition,
    opts: &ClassifyOptions,
) -> Result<ConditionReport> {
    let (dim_s2, cond_a) = check_a(d, v)?;
    let (cond_b1, b1_witness) = check_b1(d, v, dim_s2);
    let mut report = ConditionReport {
        r: d.r,
        dim_s2,
        cond_a,
        cond_b1,
        b1_witness,
        b_ge_6: d.b_ge_6(),
        b_status: BStatus::NotApplicable,
        sampled_ranks: Vec::new(),
        symbolic_rank: None,
    };
    if !cond_a {
        return Ok(report);
    }
    if cond_b1 {
        report.b_status = BStatus::CertifiedByB1;
        return Ok(report);
    }
    if d.b >= 6 && d.g > 0 {
        report.b_status = BStatus::CertifiedByB6;
        return Ok(report);
    }
    let Some(cover) = CoverMatrix::from_datum(d)? else {
        report.b_status = BStatus::Inconclusive;
        return Ok(report);
    };
    let system = build_product_system(&cover)?;
    for sample in sample_points(cover.r(), opts.seed, opts.trials) {
        let rank = rank_at_sample(&system, &to_rationals(&sample))?;
        report.sampled_ranks.push(rank);
        if rank as u64 == dim_s2 {
            report.b_status = BStatus::CertifiedByRank {
                sample: Some(sample),
            };
            return Ok(report);
        }
    }
    if !opts.allow_symbolic {
        report.b_status = BStatus::Inconclusive;
        return Ok(report);
    }
    let sym = generic_rank_symbolic(&system)?;
    report.symbolic_rank = Some(sym.rank);
    report.b_status = if sym.rank as u64 == dim_s2 {
        BStatus::CertifiedByRank { sample: None }
    } else {
        BStatus::RefutedGeneric {
            rank: sym.rank,
            kernel: sym
                .kernel
                .iter()
                .map(|k| format_kernel_element(&system, k))
                .collect(),
        }
    };
    Ok(report)
}
