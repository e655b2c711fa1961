//! Enumeration of Prym data up to Hurwitz equivalence and evaluation of the
//! conditions over whole families of groups.
//!
//! Tuples are enumerated depth first with the last entry forced. Hurwitz
//! classes are found by walking orbits breadth first: braid moves on ordered
//! tuples, automorphism generators applied entrywise. Abelian groups skip the
//! braid moves by working with sorted tuples, since there every braid move is
//! a transposition.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::{classify_b, BStatus, ClassifyOptions};
use crate::datum::{validate_datum, PrymDatum};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::named;
use crate::smallgroup::{abelian_name, group_name, identify, SmallGroupId};

/// Default bound on the number of tuples visited per orbit.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// Longest tuple the packed orbit keys can hold.
pub const MAX_R: usize = 21;

/// Which automorphisms take part in Hurwitz equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    /// Tuples up to braid moves and all of `Aut(G̃)`; every central
    /// involution is then paired with every class.
    #[default]
    FullAut,
    /// Tuples up to braid moves and the automorphisms fixing `σ`.
    SigmaFixing,
}

#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub label: String,
    pub group: FiniteGroup,
}

#[derive(Debug, Clone)]
pub enum GroupSource {
    /// Every abelian group of order at most `max_order`; without a bound the
    /// genus cap decides (needs `r ≥ 5`).
    Abelian {
        max_order: Option<usize>,
    },
    Explicit(Vec<NamedGroup>),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub r: usize,
    pub groups: GroupSource,
    pub max_genus: Option<u64>,
    pub require_a: bool,
    pub seed: u64,
    pub jobs: usize,
    pub equivalence: Equivalence,
    pub orbit_cap: usize,
    pub trials: usize,
    pub allow_symbolic: bool,
}

impl SearchConfig {
    pub fn new(r: usize, groups: GroupSource) -> Self {
        SearchConfig {
            r,
            groups,
            max_genus: None,
            require_a: true,
            seed: 1,
            jobs: 1,
            equivalence: Equivalence::FullAut,
            orbit_cap: DEFAULT_ORBIT_CAP,
            trials: 3,
            allow_symbolic: false,
        }
    }

    fn check(&self) -> Result<()> {
        if self.r < 4 {
            return Err(Error::TupleTooShort(self.r));
        }
        if self.r > MAX_R {
            return Err(Error::parse(
                "r",
                format!("at most {MAX_R} branch points are supported"),
            ));
        }
        if self.jobs == 0 || self.orbit_cap == 0 || self.trials == 0 {
            return Err(Error::parse(
                "search config",
                "jobs, orbit cap and trials must be positive",
            ));
        }
        Ok(())
    }

    /// The groups to search, with their labels.
    pub fn resolve_groups(&self) -> Result<Vec<NamedGroup>> {
        match &self.groups {
            GroupSource::Explicit(list) => Ok(list.clone()),
            GroupSource::Abelian { max_order } => {
                let bound = match (max_order, abelian_order_bound(self.r, self.max_genus)) {
                    (Some(a), Some(b)) => a.min(&b).to_owned(),
                    (Some(a), None) => *a,
                    (None, Some(b)) => b,
                    (None, None) => {
                        return Err(Error::parse(
                            "search config",
                            "abelian search needs --max-order, or --max-gtilde with r ≥ 5",
                        ))
                    }
                };
                let mut out = Vec::new();
                for n in 2..=bound.min(crate::group::MAX_ORDER) {
                    // r entries with product 1 span at most r - 1 generators
                    for factors in abelian_invariant_lists(n)
                        .into_iter()
                        .filter(|f| f.len() < self.r)
                    {
                        out.push(NamedGroup {
                            label: abelian_name(&factors),
                            group: named::abelian(&factors)?,
                        });
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Invariant factor lists `d_1 | d_2 | ... | d_k` with product `n`, each
/// factor at least 2, in lexicographic order.
pub fn abelian_invariant_lists(n: usize) -> Vec<Vec<usize>> {
    // factors are chosen largest first, each dividing the one before
    fn rec(rem: usize, prev: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 1 {
            out.push(acc.iter().rev().copied().collect());
            return;
        }
        for d in (2..=rem).filter(|&d| rem.is_multiple_of(d) && prev.is_multiple_of(d)) {
            acc.push(d);
            rec(rem / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `|G̃| ≤ (2g̃ - 2)/(r/2 - 2)` for `r ≥ 5`, since every entry contributes at
/// least `|G̃|/2` to Riemann–Hurwitz.
pub fn abelian_order_bound(r: usize, max_genus: Option<u64>) -> Option<usize> {
    let g = max_genus?;
    if r < 5 {
        return None;
    }
    Some(((4 * g.saturating_sub(1)) / (r as u64 - 4)) as usize)
}

/// Every generating tuple with product 1, no identity entries and `g̃` at
/// most `max_genus`. With `sorted`, only non-decreasing tuples are produced
/// (one per multiset), which is exhaustive up to reordering for abelian
/// groups.
pub fn for_each_tuple<F>(
    g: &FiniteGroup,
    r: usize,
    max_genus: Option<u64>,
    sorted: bool,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&[Elem]) -> Result<()>,
{
    let n = g.order();
    if n == 1 || r < 2 {
        return Ok(());
    }
    let weight: Vec<u64> = (0..n).map(|x| (n - n / g.elem_order(x)) as u64).collect();
    // Σ weights = 2g̃ - 2 + 2|G̃|
    let budget = max_genus.map(|m| 2 * m + 2 * n as u64 - 2);
    let min_weight = (n / 2) as u64;
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut st = Walk {
        g,
        r,
        sorted,
        weight,
        budget,
        min_weight,
        full,
        tuple: Vec::with_capacity(r),
    };
    st.descend(0, 0, 1, &mut f)
}

struct Walk<'a> {
    g: &'a FiniteGroup,
    r: usize,
    sorted: bool,
    weight: Vec<u64>,
    budget: Option<u64>,
    min_weight: u64,
    full: u64,
    tuple: Vec<Elem>,
}

impl Walk<'_> {
    fn close(&self, sub: u64, x: Elem) -> u64 {
        if sub >> x & 1 == 1 {
            return sub;
        }
        let mut members: Vec<Elem> = (0..self.g.order()).filter(|&y| sub >> y & 1 == 1).collect();
        let mut mask = sub;
        let mut i = 0;
        let gens: Vec<Elem> = self.tuple.iter().copied().chain([x]).collect();
        while i < members.len() {
            for &h in &gens {
                let y = self.g.mul(members[i], h);
                if mask >> y & 1 == 0 {
                    mask |= 1 << y;
                    members.push(y);
                }
            }
            i += 1;
        }
        mask
    }

    fn descend<F>(&mut self, product: Elem, spent: u64, sub: u64, f: &mut F) -> Result<()>
    where
        F: FnMut(&[Elem]) -> Result<()>,
    {
        let k = self.tuple.len();
        let n = self.g.order();
        if k == self.r - 1 {
            if sub != self.full {
                return Ok(());
            }
            let last = self.g.inv(product);
            if last == 0 || (self.sorted && last < *self.tuple.last().unwrap_or(&0)) {
                return Ok(());
            }
            if let Some(b) = self.budget {
                if spent + self.weight[last] > b {
                    return Ok(());
                }
            }
            self.tuple.push(last);
            let res = f(&self.tuple);
            self.tuple.pop();
            return res;
        }
        let start = if self.sorted {
            *self.tuple.last().unwrap_or(&1)
        } else {
            1
        };
        let left_after = (self.r - k - 1) as u64;
        for x in start.max(1)..n {
            let spent_x = spent + self.weight[x];
            if let Some(b) = self.budget {
                if spent_x + left_after * self.min_weight > b {
                    continue;
                }
            }
            let sub_x = self.close(sub, x);
            // the forced entry lies in the span of the others
            if k + 2 == self.r && sub_x != self.full {
                continue;
            }
            let product_x = self.g.mul(product, x);
            self.tuple.push(x);
            let res = self.descend(product_x, spent_x, sub_x, f);
            self.tuple.pop();
            res?;
        }
        Ok(())
    }
}

/// All validated Prym data `(G̃, tuple, σ)` with `r` entries.
pub fn enumerate_data(
    g: &FiniteGroup,
    sigma: Elem,
    r: usize,
    max_genus: Option<u64>,
) -> Result<Vec<PrymDatum>> {
    if g.elem_order(sigma) != 2 || !g.is_central(sigma) {
        return Err(Error::SigmaNotCentralInvolution);
    }
    let mut out = Vec::new();
    for_each_tuple(g, r, max_genus, g.is_abelian(), |t| {
        match validate_datum(g, t, sigma) {
            Ok(d) => out.push(d),
            Err(Error::InconsistentDatum(_)) => {}
            Err(e) => return Err(e),
        }
        Ok(())
    })?;
    Ok(out)
}

/// Generators of the automorphism group (or of the stabiliser of `fixed`),
/// as image tables. Stabilisers and non-abelian groups go through full
/// enumeration.
pub fn automorphism_generators(g: &FiniteGroup, fixed: Option<Elem>) -> Result<Vec<Vec<Elem>>> {
    if fixed.is_none() {
        if let Some(gens) = g.abelian_automorphism_generators() {
            return Ok(gens);
        }
    }
    let all = g.automorphism_tables(fixed)?;
    let compose = |a: &[Elem], b: &[Elem]| -> Vec<Elem> { b.iter().map(|&y| a[y]).collect() };
    let identity: Vec<Elem> = (0..g.order()).collect();
    let mut span: HashSet<Vec<Elem>> = HashSet::from([identity]);
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    for a in all {
        if span.contains(&a) {
            continue;
        }
        gens.push(a);
        let mut queue: VecDeque<Vec<Elem>> = span.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for h in &gens {
                let y = compose(h, &x);
                if span.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(gens)
}

fn pack(t: &[Elem]) -> u128 {
    t.iter().fold(0u128, |acc, &x| acc << 6 | x as u128)
}

/// Walks Hurwitz orbits of one group.
pub struct Canonicalizer {
    group: FiniteGroup,
    auts: Vec<Vec<Elem>>,
    braid: bool,
    cap: usize,
}

impl Canonicalizer {
    /// `fixed = Some(σ)` restricts to automorphisms fixing `σ`.
    pub fn new(group: &FiniteGroup, fixed: Option<Elem>, cap: usize) -> Result<Self> {
        Ok(Canonicalizer {
            group: group.clone(),
            auts: automorphism_generators(group, fixed)?,
            braid: !group.is_abelian(),
            cap,
        })
    }

    fn normalize(&self, mut t: Vec<Elem>) -> Vec<Elem> {
        if !self.braid {
            t.sort_unstable();
        }
        t
    }

    fn neighbours(&self, t: &[Elem], out: &mut Vec<Vec<Elem>>) {
        out.clear();
        let g = &self.group;
        for a in &self.auts {
            out.push(self.normalize(t.iter().map(|&x| a[x]).collect()));
        }
        if self.braid {
            for i in 0..t.len() - 1 {
                let (x, y) = (t[i], t[i + 1]);
                let mut right = t.to_vec();
                right[i] = g.mul(g.mul(x, y), g.inv(x));
                right[i + 1] = x;
                out.push(right);
                let mut left = t.to_vec();
                left[i] = y;
                left[i + 1] = g.mul(g.mul(g.inv(y), x), y);
                out.push(left);
            }
        }
    }

    /// The whole orbit of `t`, or the error carrying the least tuple seen
    /// once `cap` tuples have been visited.
    pub fn orbit(&self, t: &[Elem]) -> Result<Vec<Vec<Elem>>> {
        let start = self.normalize(t.to_vec());
        let mut seen: HashSet<u128> = HashSet::from([pack(&start)]);
        let mut members = vec![start];
        let mut next = 0;
        let mut buf = Vec::new();
        while next < members.len() {
            self.neighbours(&members[next].clone(), &mut buf);
            for y in buf.drain(..) {
                if seen.insert(pack(&y)) {
                    if members.len() >= self.cap {
                        return Err(Error::OrbitTooLarge {
                            cap: self.cap,
                            representative: members.iter().min().cloned().unwrap_or_default(),
                        });
                    }
                    members.push(y);
                }
            }
            next += 1;
        }
        Ok(members)
    }

    pub fn canonical(&self, t: &[Elem]) -> Result<Vec<Elem>> {
        Ok(self.orbit(t)?.into_iter().min().expect("orbit contains t"))
    }
}

/// Lexicographically least tuple in the Hurwitz class of `d`.
pub fn hurwitz_canonical(d: &PrymDatum, equivalence: Equivalence, cap: usize) -> Result<Vec<Elem>> {
    let fixed = match equivalence {
        Equivalence::FullAut => None,
        Equivalence::SigmaFixing => Some(d.sigma),
    };
    Canonicalizer::new(&d.group, fixed, cap)?.canonical(&d.tuple)
}

/// One Hurwitz class of one group.
#[derive(Debug, Clone)]
pub struct TupleClass {
    pub canonical: Vec<Elem>,
    /// False when the orbit walk hit the cap and `canonical` is only the
    /// least tuple seen.
    pub complete: bool,
}

/// Hurwitz classes of generating tuples, each listed once, in enumeration
/// order.
pub fn tuple_classes(
    g: &FiniteGroup,
    r: usize,
    max_genus: Option<u64>,
    fixed: Option<Elem>,
    cap: usize,
) -> Result<Vec<TupleClass>> {
    let canon = Canonicalizer::new(g, fixed, cap)?;
    let mut visited: HashSet<u128> = HashSet::new();
    let mut out = Vec::new();
    for_each_tuple(g, r, max_genus, g.is_abelian(), |t| {
        if visited.contains(&pack(t)) {
            return Ok(());
        }
        match canon.orbit(t) {
            Ok(orbit) => {
                let least = orbit.iter().min().cloned().expect("nonempty orbit");
                visited.extend(orbit.iter().map(|x| pack(x)));
                out.push(TupleClass {
                    canonical: least,
                    complete: true,
                });
            }
            Err(Error::OrbitTooLarge { representative, .. }) => {
                visited.insert(pack(t));
                out.push(TupleClass {
                    canonical: representative,
                    complete: false,
                });
            }
            Err(e) => return Err(e),
        }
        Ok(())
    })?;
    Ok(out)
}

/// One family found by the search. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub r: usize,
    pub g_tilde: u64,
    pub g: u64,
    pub b: u64,
    pub p: u64,
    /// 1-based within rows sharing `(r, g̃, g, b, p, group)`.
    pub index: usize,
    pub group_name: String,
    pub group_id: Option<SmallGroupId>,
    pub quotient_id: Option<SmallGroupId>,
    pub dim_s2: u64,
    pub cond_a: bool,
    #[serde(rename = "B1")]
    pub b1: bool,
    pub b_ge_6: bool,
    #[serde(rename = "B_status")]
    pub b_status: String,
    pub sigma: String,
    pub canonical_tuple: String,
    pub orbit_complete: bool,
}

impl ReportRow {
    pub fn b_certified(&self) -> bool {
        BStatus::from_name(&self.b_status).is_some_and(|s| s.is_certified())
    }

    fn sort_key(&self) -> impl Ord + '_ {
        (
            (self.r, self.g_tilde, self.g, self.b, self.p),
            self.group_id,
            &self.group_name,
            &self.canonical_tuple,
            &self.sigma,
        )
    }
}

/// `1,0` style for coordinate elements, the index otherwise.
pub fn format_element(g: &FiniteGroup, x: Elem) -> String {
    match g.coords(x) {
        Some(c) => c.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
        None => x.to_string(),
    }
}

pub fn format_tuple(g: &FiniteGroup, t: &[Elem]) -> String {
    t.iter()
        .map(|&x| format_element(g, x))
        .collect::<Vec<_>>()
        .join(" ")
}

struct Cell {
    group: NamedGroup,
    name: String,
    id: Option<SmallGroupId>,
    sigmas: Vec<Elem>,
}

/// Runs the search and returns rows sorted by `(r, g̃, g, b, p, group)` with
/// indices assigned.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<ReportRow>> {
    cfg.check()?;
    let groups = cfg.resolve_groups()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::internal(e.to_string()))?;
    let cells: Vec<Cell> = groups
        .into_iter()
        .map(|ng| {
            let sigmas = ng.group.central_involutions();
            let (id, name) = match identify(&ng.group) {
                Some((id, name)) => (Some(id), name.to_string()),
                None => (None, group_name(&ng.group)),
            };
            Cell {
                group: ng,
                name,
                id,
                sigmas,
            }
        })
        .filter(|c| !c.sigmas.is_empty())
        .collect();
    let per_cell: Vec<Result<Vec<ReportRow>>> =
        pool.install(|| cells.par_iter().map(|c| search_cell(c, cfg)).collect());
    let mut rows = Vec::new();
    for r in per_cell {
        rows.extend(r?);
    }
    sort_rows(&mut rows);
    Ok(rows)
}

/// Sorts by `(r, g̃, g, b, p, group, canonical tuple)` and renumbers.
pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    assign_indices(rows);
}

/// Numbers rows 1, 2, ... within each `(r, g̃, g, b, p, group)` block.
pub fn assign_indices(rows: &mut [ReportRow]) {
    let mut counters: HashMap<(usize, u64, u64, u64, u64, Option<SmallGroupId>, String), usize> =
        HashMap::new();
    for row in rows.iter_mut() {
        let key = (
            row.r,
            row.g_tilde,
            row.g,
            row.b,
            row.p,
            row.group_id,
            row.group_name.clone(),
        );
        let c = counters.entry(key).or_insert(0);
        *c += 1;
        row.index = *c;
    }
}

fn search_cell(cell: &Cell, cfg: &SearchConfig) -> Result<Vec<ReportRow>> {
    let g = &cell.group.group;
    let mut work: Vec<(Vec<Elem>, bool, Elem)> = Vec::new();
    match cfg.equivalence {
        Equivalence::FullAut => {
            let classes = tuple_classes(g, cfg.r, cfg.max_genus, None, cfg.orbit_cap)?;
            for c in &classes {
                for &s in &cell.sigmas {
                    work.push((c.canonical.clone(), c.complete, s));
                }
            }
        }
        Equivalence::SigmaFixing => {
            for &s in &cell.sigmas {
                for c in tuple_classes(g, cfg.r, cfg.max_genus, Some(s), cfg.orbit_cap)? {
                    work.push((c.canonical, c.complete, s));
                }
            }
        }
    }
    let quotient_ids: HashMap<Elem, Option<SmallGroupId>> = cell
        .sigmas
        .iter()
        .map(|&s| {
            let q = g
                .quotient_by_subgroup(&[0, s])
                .ok()
                .and_then(|(q, _)| identify(&q));
            (s, q.map(|(id, _)| id))
        })
        .collect();
    let opts = ClassifyOptions {
        seed: cfg.seed,
        trials: cfg.trials,
        allow_symbolic: cfg.allow_symbolic,
    };
    let rows: Vec<Result<Option<ReportRow>>> = work
        .par_iter()
        .map(|(t, complete, s)| {
            let d = match validate_datum(g, t, *s) {
                Ok(d) => d,
                Err(Error::InconsistentDatum(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            let rep = classify_b(&d, &opts)?;
            if cfg.require_a && !rep.cond_a {
                return Ok(None);
            }
            Ok(Some(ReportRow {
                r: d.r,
                g_tilde: d.g_tilde,
                g: d.g,
                b: d.b,
                p: d.p,
                index: 0,
                group_name: cell.name.clone(),
                group_id: cell.id,
                quotient_id: quotient_ids[s],
                dim_s2: rep.dim_s2,
                cond_a: rep.cond_a,
                b1: rep.cond_b1,
                b_ge_6: rep.b_ge_6,
                b_status: rep.b_status.name().to_string(),
                sigma: format_element(g, *s),
                canonical_tuple: format_tuple(g, t),
                orbit_complete: *complete,
            }))
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        if let Some(row) = r? {
            out.push(row);
        }
    }
    Ok(out)
}
