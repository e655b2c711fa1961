//! Reproduction of the reference table of families satisfying (B).
//!
//! Rows are compared as a multiset of `(r, g̃, g, b, p, G̃ id, B1, b ≥ 6, B)`
//! keys; the `#` index is ignored since it depends on the enumeration order.
//! A reference row with `count = k` stands for `k` keys.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::named;
use crate::search::{
    abelian_order_bound, run_search, sort_rows, Equivalence, GroupSource, NamedGroup, ReportRow,
    SearchConfig, DEFAULT_ORBIT_CAP,
};
use crate::smallgroup::{identify, SmallGroupId};

/// The reference lists every abelian family with `r ∈ {8, 9}` and
/// `g̃ ≤ 20`; elsewhere it is a selection, so rows missing from it there are
/// not discrepancies.
pub fn reference_is_exhaustive(key: &RowKey) -> bool {
    let abelian = key
        .group_id
        .is_none_or(|id| named::by_id(id.order, id.number).is_some_and(|g| g.is_abelian()));
    matches!(key.r, 8 | 9) && key.g_tilde <= 20 && abelian
}

/// The reference table shipped with the crate.
pub const REFERENCE_CSV: &str = include_str!("../data/reference_table.csv");

/// Families outside the table that are Shimura for reasons other than (B):
/// `(r, g̃, g, b, p, G̃)`.
pub const KNOWN_BY_OTHER_MEANS: [(usize, u64, u64, u64, u64, SmallGroupId); 1] = [(
    5,
    25,
    13,
    0,
    12,
    SmallGroupId {
        order: 48,
        number: 32,
    },
)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub r: usize,
    pub g_tilde: u64,
    pub g: u64,
    pub b: u64,
    pub p: u64,
    pub count: usize,
    pub group_name: String,
    pub gtilde_id_order: usize,
    pub gtilde_id_num: usize,
    pub g_id_order: usize,
    pub g_id_num: usize,
    #[serde(rename = "B1")]
    pub b1: bool,
    pub bge6: bool,
    #[serde(rename = "B")]
    pub cond_b: bool,
}

impl ReferenceRow {
    pub fn gtilde_id(&self) -> SmallGroupId {
        SmallGroupId {
            order: self.gtilde_id_order,
            number: self.gtilde_id_num,
        }
    }

    pub fn key(&self) -> RowKey {
        RowKey {
            r: self.r,
            g_tilde: self.g_tilde,
            g: self.g,
            b: self.b,
            p: self.p,
            group_id: Some(self.gtilde_id()),
            b1: self.b1,
            b_ge_6: self.bge6,
            cond_b: self.cond_b,
        }
    }
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| Error::parse(format!("reference row {}", i + 1), e.to_string()))
        })
        .collect()
}

pub fn reference_rows() -> Vec<ReferenceRow> {
    parse_reference(REFERENCE_CSV).expect("embedded reference table parses")
}

/// Comparison key of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RowKey {
    pub r: usize,
    pub g_tilde: u64,
    pub g: u64,
    pub b: u64,
    pub p: u64,
    pub group_id: Option<SmallGroupId>,
    pub b1: bool,
    pub b_ge_6: bool,
    pub cond_b: bool,
}

impl RowKey {
    pub fn of(row: &ReportRow) -> Self {
        RowKey {
            r: row.r,
            g_tilde: row.g_tilde,
            g: row.g,
            b: row.b,
            p: row.p,
            group_id: row.group_id,
            b1: row.b1,
            b_ge_6: row.b_ge_6,
            cond_b: row.b_certified(),
        }
    }

    fn shape(&self) -> (usize, u64, u64, u64, u64, Option<SmallGroupId>) {
        (self.r, self.g_tilde, self.g, self.b, self.p, self.group_id)
    }

    fn is_known_by_other_means(&self) -> bool {
        KNOWN_BY_OTHER_MEANS
            .iter()
            .any(|&(r, gt, g, b, p, id)| self.shape() == (r, gt, g, b, p, Some(id)))
    }
}

impl std::fmt::Display for RowKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let id = self
            .group_id
            .map_or("unknown".to_string(), |i| i.to_string());
        let mark = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "r={} g̃={} g={} b={} p={} {} B1={} b≥6={} B={}",
            self.r,
            self.g_tilde,
            self.g,
            self.b,
            self.p,
            id,
            mark(self.b1),
            mark(self.b_ge_6),
            mark(self.cond_b)
        )
    }
}

/// Which part of the table to reproduce.
#[derive(Debug, Clone)]
pub struct TableScope {
    pub r_values: Vec<usize>,
    /// Search every abelian group within the bounds.
    pub abelian: bool,
    pub max_g_tilde: Option<u64>,
    pub max_order: Option<usize>,
    /// Non-abelian groups to search in addition.
    pub extra_groups: Vec<NamedGroup>,
    pub seed: u64,
    pub jobs: usize,
    pub equivalence: Equivalence,
    pub orbit_cap: usize,
}

impl TableScope {
    pub fn abelian(r_values: Vec<usize>, max_g_tilde: Option<u64>) -> Self {
        TableScope {
            r_values,
            abelian: true,
            max_g_tilde,
            max_order: None,
            extra_groups: Vec::new(),
            seed: 1,
            jobs: 1,
            equivalence: Equivalence::FullAut,
            orbit_cap: DEFAULT_ORBIT_CAP,
        }
    }

    fn config(&self, r: usize, groups: GroupSource) -> SearchConfig {
        let mut cfg = SearchConfig::new(r, groups);
        cfg.max_genus = self.max_g_tilde;
        cfg.seed = self.seed;
        cfg.jobs = self.jobs;
        cfg.equivalence = self.equivalence;
        cfg.orbit_cap = self.orbit_cap;
        cfg.allow_symbolic = true;
        cfg
    }

    /// Whether a reference row lies inside the searched region.
    pub fn covers(&self, row: &ReferenceRow, extra_ids: &HashSet<SmallGroupId>) -> bool {
        if !self.r_values.contains(&row.r) || self.max_g_tilde.is_some_and(|m| row.g_tilde > m) {
            return false;
        }
        if extra_ids.contains(&row.gtilde_id()) {
            return true;
        }
        if !self.abelian {
            return false;
        }
        let is_abelian =
            named::by_id(row.gtilde_id_order, row.gtilde_id_num).is_some_and(|g| g.is_abelian());
        let bound = match (self.max_order, abelian_order_bound(row.r, self.max_g_tilde)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        is_abelian && bound.is_none_or(|b| row.gtilde_id_order <= b)
    }
}

/// Differences between search output and the reference.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TableDiff {
    /// Reference keys matched by a certified row.
    pub matched: usize,
    /// Reference keys matched on the A/B1/b≥6 flags by an inconclusive
    /// non-abelian row.
    pub partial: Vec<RowKey>,
    pub missing: Vec<RowKey>,
    /// Certified rows absent from the reference where it is exhaustive.
    pub extra: Vec<RowKey>,
    /// Certified rows absent from the reference where it is a selection.
    pub unlisted: Vec<RowKey>,
    /// Same family, different flags: `(ours, reference)`.
    pub flag_mismatch: Vec<(RowKey, RowKey)>,
    /// Inconclusive rows known to be Shimura by an independent argument.
    pub known_by_other_means: Vec<RowKey>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.flag_mismatch.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "diff: {} missing, {} extra, {} flag-mismatched ({} matched, {} partial, {} known by other means, {} unlisted)\n",
            self.missing.len(),
            self.extra.len(),
            self.flag_mismatch.len(),
            self.matched,
            self.partial.len(),
            self.known_by_other_means.len(),
            self.unlisted.len()
        );
        for k in &self.missing {
            s += &format!("missing  {k}\n");
        }
        for k in &self.extra {
            s += &format!("extra    {k}\n");
        }
        for (ours, theirs) in &self.flag_mismatch {
            s += &format!("flags    {ours}  (reference: {theirs})\n");
        }
        for k in &self.partial {
            s += &format!("partial  {k}\n");
        }
        for k in &self.known_by_other_means {
            s += &format!("other    {k}\n");
        }
        for k in &self.unlisted {
            s += &format!("unlisted {k}\n");
        }
        s
    }
}

type Multiset = BTreeMap<RowKey, usize>;

fn take(set: &mut Multiset, key: &RowKey) -> bool {
    match set.get_mut(key) {
        Some(c) if *c > 0 => {
            *c -= 1;
            true
        }
        _ => false,
    }
}

fn flatten(set: &Multiset) -> Vec<RowKey> {
    set.iter()
        .flat_map(|(k, &c)| std::iter::repeat_n(*k, c))
        .collect()
}

/// Diffs certified rows against in-scope reference rows.
pub fn diff_rows(rows: &[ReportRow], reference: &[ReferenceRow]) -> TableDiff {
    let mut theirs = Multiset::new();
    for row in reference.iter().filter(|r| r.cond_b) {
        *theirs.entry(row.key()).or_default() += row.count;
    }
    let mut ours = Multiset::new();
    let mut diff = TableDiff::default();
    for row in rows {
        let key = RowKey::of(row);
        if key.cond_b {
            *ours.entry(key).or_default() += 1;
        } else if row.b_status == "inconclusive" {
            let claimed = RowKey {
                cond_b: true,
                ..key
            };
            if take(&mut theirs, &claimed) {
                diff.partial.push(key);
            } else if key.is_known_by_other_means() {
                diff.known_by_other_means.push(key);
            }
        }
    }
    for (key, count) in ours.iter_mut() {
        while *count > 0 && take(&mut theirs, key) {
            *count -= 1;
            diff.matched += 1;
        }
    }
    let mut extra = flatten(&ours);
    let mut missing = flatten(&theirs);
    extra.retain(
        |e| match missing.iter().position(|m| m.shape() == e.shape()) {
            Some(i) => {
                diff.flag_mismatch.push((*e, missing.remove(i)));
                false
            }
            None => true,
        },
    );
    let (extra, unlisted) = extra.into_iter().partition(reference_is_exhaustive);
    diff.missing = missing;
    diff.extra = extra;
    diff.unlisted = unlisted;
    diff
}

/// Runs the search over `scope` and diffs it against `reference`.
pub fn reproduce_table(
    scope: &TableScope,
    reference: &[ReferenceRow],
) -> Result<(Vec<ReportRow>, TableDiff)> {
    let mut rows = Vec::new();
    for &r in &scope.r_values {
        if scope.abelian {
            let source = GroupSource::Abelian {
                max_order: scope.max_order,
            };
            rows.extend(run_search(&scope.config(r, source))?);
        }
        if !scope.extra_groups.is_empty() {
            let source = GroupSource::Explicit(scope.extra_groups.clone());
            rows.extend(run_search(&scope.config(r, source))?);
        }
    }
    sort_rows(&mut rows);
    let extra_ids: HashSet<SmallGroupId> = scope
        .extra_groups
        .iter()
        .filter_map(|g| identify(&g.group).map(|(id, _)| id))
        .collect();
    let in_scope: Vec<ReferenceRow> = reference
        .iter()
        .filter(|row| scope.covers(row, &extra_ids))
        .cloned()
        .collect();
    let diff = diff_rows(&rows, &in_scope);
    Ok((rows, diff))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_parses() {
        let rows = reference_rows();
        assert_eq!(rows.len(), 72);
        assert!(rows.iter().all(|r| r.cond_b));
        let families: usize = rows.iter().map(|r| r.count).sum();
        assert_eq!(families, 92);
        for r in &rows {
            let g = named::by_id(r.gtilde_id_order, r.gtilde_id_num).expect("constructible");
            let sigma = g.central_involutions();
            assert!(!sigma.is_empty(), "{}", r.group_name);
            assert_eq!(r.p * 2, 2 * (r.g_tilde - r.g));
        }
    }

    fn report(key: RowKey, status: &str) -> ReportRow {
        ReportRow {
            r: key.r,
            g_tilde: key.g_tilde,
            g: key.g,
            b: key.b,
            p: key.p,
            index: 1,
            group_name: String::new(),
            group_id: key.group_id,
            quotient_id: None,
            dim_s2: key.r as u64 - 3,
            cond_a: true,
            b1: key.b1,
            b_ge_6: key.b_ge_6,
            b_status: status.into(),
            sigma: String::new(),
            canonical_tuple: String::new(),
            orbit_complete: true,
        }
    }

    #[test]
    fn diff_counts_multiplicity_and_flags() {
        let reference = parse_reference(
            "r,g_tilde,g,b,p,count,group_name,gtilde_id_order,gtilde_id_num,g_id_order,g_id_num,B1,bge6,B\n\
             6,5,3,0,2,2,C2^3,8,5,4,2,false,false,true\n\
             5,3,0,8,3,1,C4,4,1,2,1,true,true,true\n",
        )
        .unwrap();
        let a = reference[0].key();
        let c = reference[1].key();
        let rows = vec![
            report(a, "certified_by_rank"),
            report(RowKey { b1: false, ..c }, "certified_by_b6"),
            report(RowKey { g_tilde: 9, ..a }, "certified_by_rank"),
        ];
        let d = diff_rows(&rows, &reference);
        assert_eq!(d.matched, 1);
        assert_eq!(d.missing, vec![a]);
        assert!(d.extra.is_empty());
        assert_eq!(d.unlisted, vec![RowKey { g_tilde: 9, ..a }]);
        assert_eq!(d.flag_mismatch, vec![(RowKey { b1: false, ..c }, c)]);
        assert!(!d.is_empty());
        let listed = RowKey {
            r: 8,
            g_tilde: 7,
            ..a
        };
        assert_eq!(
            diff_rows(&[report(listed, "certified_by_rank")], &[]).extra,
            vec![listed]
        );
    }

    #[test]
    fn inconclusive_rows_match_partially() {
        let id = SmallGroupId {
            order: 48,
            number: 32,
        };
        let key = RowKey {
            r: 5,
            g_tilde: 25,
            g: 13,
            b: 0,
            p: 12,
            group_id: Some(id),
            b1: false,
            b_ge_6: false,
            cond_b: false,
        };
        let d = diff_rows(&[report(key, "inconclusive")], &[]);
        assert!(d.is_empty());
        assert_eq!(d.known_by_other_means, vec![key]);
    }
}
