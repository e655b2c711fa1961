//! Finite groups as concrete multiplication tables.
//!
//! Elements are the indices `0..order`, with `0` the identity. A group either
//! comes from a matrix over `Z/NZ` (the column span inside `(Z/NZ)^m`, elements
//! carry coordinate vectors) or from an explicit Cayley table.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// Largest group order any construction accepts.
pub const MAX_ORDER: usize = 64;

/// Upper bound on the number of automorphisms enumerated before giving up.
pub const MAX_AUTOMORPHISMS: usize = 250_000;

pub type Elem = usize;

/// Where a group came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Column span of an `m x r` matrix over `Z/NZ`. `coords[x]` is the
    /// coordinate vector of element `x` in `(Z/NZ)^m`.
    Abelian {
        modulus: u32,
        matrix: Vec<Vec<u32>>,
        coords: Vec<Vec<u32>>,
    },
    Cayley,
}

#[derive(Debug)]
struct GroupData {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    elem_orders: Vec<u32>,
    provenance: Provenance,
    coord_index: HashMap<Vec<u32>, usize>,
}

/// A finite group with elements `0..order` and `0` the identity.
///
/// Cloning is cheap; the multiplication table is shared.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("abelian", &self.is_abelian())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.table == other.data.table
    }
}

impl Eq for FiniteGroup {}

/// A homomorphism between two finite groups, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub image: Vec<Elem>,
}

impl GroupHom {
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn is_homomorphism(&self) -> bool {
        let n = self.source.order();
        if self.image.len() != n || self.image[0] != 0 {
            return false;
        }
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.image[self.source.mul(a, b)] == self.target.mul(self.image[a], self.image[b])
            })
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let set: HashSet<_> = self.image.iter().collect();
        set.len() == self.image.len()
    }

    pub fn kernel(&self) -> Vec<Elem> {
        (0..self.source.order())
            .filter(|&x| self.image[x] == 0)
            .collect()
    }

    /// `self` after `other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            source: other.source.clone(),
            target: self.target.clone(),
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        }
    }
}

impl FiniteGroup {
    fn build(table: Vec<u32>, order: usize, provenance: Provenance) -> Self {
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let mut elem_orders = vec![1u32; order];
        for (a, slot) in elem_orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        let coord_index = match &provenance {
            Provenance::Abelian { coords, .. } => coords
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect(),
            Provenance::Cayley => HashMap::new(),
        };
        FiniteGroup {
            data: Arc::new(GroupData {
                order,
                table,
                inverse,
                elem_orders,
                provenance,
                coord_index,
            }),
        }
    }

    /// Subgroup of `(Z/NZ)^m` spanned by the columns of `matrix` (`m` rows).
    ///
    /// Elements are numbered in lexicographic order of their coordinate
    /// vectors, which puts the zero vector at index 0.
    pub fn abelian_from_columns(modulus: u32, matrix: &[Vec<u32>]) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::BadModulus(modulus));
        }
        let m = matrix.len();
        let r = matrix.first().map_or(0, Vec::len);
        if m == 0 || r == 0 {
            return Err(GroupError::NoGenerators);
        }
        if matrix.iter().any(|row| row.len() != r) {
            return Err(GroupError::RaggedMatrix);
        }
        if let Some(&bad) = matrix.iter().flatten().find(|&&v| v >= modulus) {
            return Err(GroupError::EntryOutOfRange {
                value: bad,
                modulus,
            });
        }
        let columns: Vec<Vec<u32>> = (0..r)
            .map(|j| (0..m).map(|i| matrix[i][j]).collect())
            .collect();
        let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
            a.iter().zip(b).map(|(x, y)| (x + y) % modulus).collect()
        };
        let zero = vec![0u32; m];
        let mut seen: HashSet<Vec<u32>> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(v) = queue.pop_front() {
            for c in &columns {
                let w = add(&v, c);
                if seen.insert(w.clone()) {
                    if seen.len() > MAX_ORDER {
                        return Err(GroupError::TooLarge(seen.len()));
                    }
                    queue.push_back(w);
                }
            }
        }
        let mut coords: Vec<Vec<u32>> = seen.into_iter().collect();
        coords.sort();
        Ok(Self::from_coords(modulus, matrix.to_vec(), coords))
    }

    fn from_coords(modulus: u32, matrix: Vec<Vec<u32>>, coords: Vec<Vec<u32>>) -> Self {
        let n = coords.len();
        let index: HashMap<&[u32], usize> = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .map(|(x, y)| (x + y) % modulus)
                    .collect();
                table[a * n + b] = index[s.as_slice()] as u32;
            }
        }
        Self::build(
            table,
            n,
            Provenance::Abelian {
                modulus,
                matrix,
                coords,
            },
        )
    }

    /// Group given by an explicit multiplication table (`rows[i][j]` is the
    /// index of `i*j`). All group axioms are checked exhaustively.
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Cayley("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut table = vec![0u32; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Cayley(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::Cayley(format!(
                        "entry {v} at row {}, column {} is out of range",
                        i + 1,
                        j + 1
                    )));
                }
                table[i * n + j] = v as u32;
            }
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(GroupError::Cayley("index 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                row_seen[table[a * n + b] as usize] = true;
                col_seen[table[b * n + a] as usize] = true;
            }
            if row_seen.iter().any(|s| !s) || col_seen.iter().any(|s| !s) {
                return Err(GroupError::Cayley(format!(
                    "element {a} has no two-sided inverse (table is not a latin square)"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(GroupError::Cayley(format!(
                            "not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self::build(table, n, Provenance::Cayley))
    }

    /// Group generated by `gens` inside some ambient structure with the given
    /// multiplication. Elements are numbered in breadth-first order from the
    /// identity.
    pub fn from_generators<T, F>(identity: T, gens: &[T], mul: F) -> Result<Self, GroupError>
    where
        T: Clone + Eq + std::hash::Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elems.len() {
            for g in gens {
                let y = mul(&elems[next], g);
                if !index.contains_key(&y) {
                    if elems.len() == MAX_ORDER {
                        return Err(GroupError::TooLarge(MAX_ORDER + 1));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            next += 1;
        }
        let rows: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        Self::from_cayley_table(&rows)
    }

    /// Parses the plain-text Cayley format: a line `order n` followed by `n`
    /// rows of `n` whitespace-separated indices.
    pub fn parse_cayley(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| GroupError::Cayley("missing `order n` header".into()))?;
        let n: usize = header
            .strip_prefix("order")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| {
                GroupError::Cayley(format!("line {}: expected `order n`", lineno + 1))
            })?;
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut rows = Vec::with_capacity(n);
        for (lineno, line) in lines {
            let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|e| GroupError::Cayley(format!("line {}: {e}", lineno + 1)))?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(GroupError::Cayley(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        Self::from_cayley_table(&rows)
    }

    pub fn to_cayley_text(&self) -> String {
        let n = self.order();
        let mut out = format!("order {n}\n");
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Cayley-table copy with elements renamed by `perm` (old index -> new
    /// index). `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[Elem]) -> Result<Self, GroupError> {
        let n = self.order();
        let mut rows = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                rows[perm[a]][perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_cayley_table(&rows)
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self, GroupError> {
        let (n1, n2) = (self.order(), other.order());
        if n1 * n2 > MAX_ORDER {
            return Err(GroupError::TooLarge(n1 * n2));
        }
        let idx = |a: usize, b: usize| a * n2 + b;
        let mut rows = vec![vec![0usize; n1 * n2]; n1 * n2];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        rows[idx(a1, b1)][idx(a2, b2)] = idx(self.mul(a1, a2), other.mul(b1, b2));
                    }
                }
            }
        }
        Self::from_cayley_table(&rows)
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.data.table[a * self.data.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.data.inverse[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.data.elem_orders[a] as usize
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let o = self.elem_order(a) as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Row-major multiplication table; identical tables mean identical groups.
    pub fn raw_table(&self) -> &[u32] {
        &self.data.table
    }

    pub fn provenance(&self) -> &Provenance {
        &self.data.provenance
    }

    /// Coordinates of `x` for abelian-provenance groups.
    pub fn coords(&self, x: Elem) -> Option<&[u32]> {
        match &self.data.provenance {
            Provenance::Abelian { coords, .. } => Some(&coords[x]),
            Provenance::Cayley => None,
        }
    }

    pub fn index_of_coords(&self, v: &[u32]) -> Option<Elem> {
        self.data.coord_index.get(v).copied()
    }

    pub fn modulus(&self) -> Option<u32> {
        match &self.data.provenance {
            Provenance::Abelian { modulus, .. } => Some(*modulus),
            Provenance::Cayley => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, x| num_integer::lcm(acc, self.elem_order(x)))
    }

    /// Exhaustive check of the group axioms on the stored table.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return false;
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return false;
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| inside[x]).collect()
    }

    pub fn generates(&self, gens: &[Elem]) -> bool {
        self.subgroup_generated(gens).len() == self.order()
    }

    pub fn is_subgroup(&self, h: &[Elem]) -> bool {
        let set: HashSet<Elem> = h.iter().copied().collect();
        set.contains(&0)
            && h.iter()
                .all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, h: &[Elem]) -> bool {
        let set: HashSet<Elem> = h.iter().copied().collect();
        h.iter()
            .all(|&x| (0..self.order()).all(|g| set.contains(&self.conj(x, g))))
    }

    pub fn is_central(&self, x: Elem) -> bool {
        (0..self.order()).all(|y| self.mul(x, y) == self.mul(y, x))
    }

    pub fn center(&self) -> Vec<Elem> {
        (0..self.order()).filter(|&x| self.is_central(x)).collect()
    }

    pub fn derived_subgroup(&self) -> Vec<Elem> {
        let n = self.order();
        let mut comms: Vec<Elem> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    /// All central elements of order exactly two.
    pub fn central_involutions(&self) -> Vec<Elem> {
        (1..self.order())
            .filter(|&x| self.elem_order(x) == 2 && self.is_central(x))
            .collect()
    }

    /// Conjugacy classes: the identity class first, then ordered by element
    /// order, class size and smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut class: Vec<Elem> = (0..n).map(|g| self.conj(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| (self.elem_order(c[0]), c.len(), c[0]));
        classes
    }

    /// Quotient by a normal subgroup, with the projection.
    ///
    /// Cosets are numbered by their smallest member, so the coset of the
    /// identity is 0.
    pub fn quotient_by_subgroup(&self, h: &[Elem]) -> Result<(FiniteGroup, GroupHom), GroupError> {
        let mut h: Vec<Elem> = h.to_vec();
        h.sort_unstable();
        h.dedup();
        if h.iter().any(|&x| x >= self.order()) || !self.is_subgroup(&h) {
            return Err(GroupError::NotSubgroup);
        }
        if !self.is_normal(&h) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &y in &h {
                coset_of[self.mul(x, y)] = id;
            }
        }
        let q = reps.len();
        let rows: Vec<Vec<usize>> = (0..q)
            .map(|a| {
                (0..q)
                    .map(|b| coset_of[self.mul(reps[a], reps[b])])
                    .collect()
            })
            .collect();
        let quotient = Self::from_cayley_table(&rows)?;
        let proj = GroupHom {
            source: self.clone(),
            target: quotient.clone(),
            image: coset_of,
        };
        Ok((quotient, proj))
    }

    /// Generating set chosen greedily by decreasing element order.
    pub fn small_generating_set(&self) -> Vec<Elem> {
        let n = self.order();
        let mut by_order: Vec<Elem> = (1..n).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        let mut gens = Vec::new();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut size = 1;
        while size < n {
            let g = *by_order
                .iter()
                .find(|&&x| !inside[x])
                .expect("some element lies outside a proper subgroup");
            gens.push(g);
            let sub = self.subgroup_generated(&gens);
            size = sub.len();
            for x in sub {
                inside[x] = true;
            }
        }
        gens
    }

    /// All automorphisms as image tables, optionally restricted to those
    /// fixing `fixed`.
    ///
    /// Generator images are searched exhaustively; candidates must have the
    /// same order as the generator and stay outside the image of the
    /// subgroup built so far, and the partial map is checked for consistency
    /// after every generator.
    pub fn automorphism_tables(&self, fixed: Option<Elem>) -> Result<Vec<Vec<Elem>>, GroupError> {
        let n = self.order();
        if n > MAX_ORDER {
            return Err(GroupError::AutomorphismBound(n));
        }
        let gens = self.small_generating_set();
        let mut out = Vec::new();
        if gens.is_empty() {
            out.push(vec![0]);
            return Ok(out);
        }
        let mut images = Vec::with_capacity(gens.len());
        self.aut_search(&gens, &mut images, fixed, &mut out)?;
        Ok(out)
    }

    fn aut_search(
        &self,
        gens: &[Elem],
        images: &mut Vec<Elem>,
        fixed: Option<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) -> Result<(), GroupError> {
        let level = images.len();
        let n = self.order();
        let partial = self.extend_partial(&gens[..level], images);
        let Some(map) = partial else { return Ok(()) };
        if let Some(s) = fixed {
            if map[s] != usize::MAX && map[s] != s {
                return Ok(());
            }
        }
        if level == gens.len() {
            if out.len() >= MAX_AUTOMORPHISMS {
                return Err(GroupError::TooManyAutomorphisms(MAX_AUTOMORPHISMS));
            }
            out.push(map);
            return Ok(());
        }
        let mut covered = vec![false; n];
        for &y in map.iter().filter(|&&y| y != usize::MAX) {
            covered[y] = true;
        }
        let want = self.elem_order(gens[level]);
        for h in 0..n {
            if covered[h] || self.elem_order(h) != want {
                continue;
            }
            images.push(h);
            self.aut_search(gens, images, fixed, out)?;
            images.pop();
        }
        Ok(())
    }

    /// Extends generator images to the generated subgroup; `None` if the map
    /// is inconsistent or not injective there.
    fn extend_partial(&self, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let img = self.mul(map[x], h);
                if map[y] == usize::MAX {
                    if used[img] {
                        return None;
                    }
                    map[y] = img;
                    used[img] = true;
                    queue.push_back(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Automorphisms `phi` with `phi(s) = s`.
    pub fn automorphisms_fixing(&self, s: Elem) -> Result<Vec<GroupHom>, GroupError> {
        if s >= self.order() {
            return Err(GroupError::NoSuchElement(s));
        }
        Ok(self
            .automorphism_tables(Some(s))?
            .into_iter()
            .map(|image| GroupHom {
                source: self.clone(),
                target: self.clone(),
                image,
            })
            .collect())
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k` of an abelian group.
    pub fn abelian_invariants(&self) -> Option<Vec<usize>> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order();
        if n == 1 {
            return Some(Vec::new());
        }
        // For each prime p: #{x : x^{p^k} = 1} = p^{sum_i min(k, e_i)}.
        let mut per_prime: Vec<Vec<usize>> = Vec::new();
        for p in prime_factors(n) {
            let mut counts = vec![1usize];
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let c = (0..n)
                    .filter(|&x| pk % self.elem_order(x) == 0 || self.elem_order(x) == 1)
                    .filter(|&x| is_power_of(self.elem_order(x), p))
                    .count();
                counts.push(c);
                if c == *counts.get(counts.len() - 2).unwrap() && k > 1 {
                    break;
                }
                if !n.is_multiple_of(pk) {
                    break;
                }
                k += 1;
            }
            // number of cyclic factors with exponent >= k
            let logs: Vec<u32> = counts.iter().map(|&c| ilog(c, p)).collect();
            let mut ge: Vec<u32> = Vec::new();
            for w in logs.windows(2) {
                ge.push(w[1] - w[0]);
            }
            // exponents of the p-parts, largest first
            let mut exps: Vec<u32> = Vec::new();
            let kmax = ge.len();
            for k in (1..=kmax).rev() {
                let at_least_k = ge[k - 1];
                let above = if k < kmax { ge[k] } else { 0 };
                for _ in 0..(at_least_k - above) {
                    exps.push(k as u32);
                }
            }
            per_prime.push(exps.iter().map(|&e| p.pow(e)).collect());
        }
        let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1usize; len];
        for parts in &per_prime {
            for (i, &q) in parts.iter().enumerate() {
                factors[i] *= q;
            }
        }
        factors.reverse();
        Some(factors)
    }

    /// For an abelian group, an isomorphism onto `Z/d_1 x ... x Z/d_k`
    /// embedded in `(Z/NZ)^k` with `N = d_k`: returns `(N, coords)` where
    /// `coords[x]` is the image of element `x`.
    pub fn abelian_coordinates(&self) -> Option<(u32, Vec<Vec<u32>>)> {
        let inv = self.abelian_invariants()?;
        let n = self.order();
        if inv.is_empty() {
            return Some((2, vec![vec![0]]));
        }
        let big_n = *inv.last().unwrap();
        let mut basis = Vec::new();
        if !self.find_basis(&inv, &mut basis) {
            return None;
        }
        let mut coords = vec![Vec::new(); n];
        let mut stack = vec![(0usize, Vec::<u32>::new())];
        // enumerate sum c_i b_i
        while let Some((x, c)) = stack.pop() {
            let i = c.len();
            if i == inv.len() {
                coords[x] = c;
                continue;
            }
            let mut y = x;
            for k in 0..inv[i] {
                let mut cc = c.clone();
                cc.push((k * (big_n / inv[i])) as u32);
                stack.push((y, cc));
                y = self.mul(y, basis[i]);
            }
        }
        Some((big_n as u32, coords))
    }

    /// Generators of `Aut(G)` for abelian `G` without enumerating the whole
    /// group. On an invariant-factor basis `e_1..e_k` of orders `d_i`:
    /// scalings `e_i ↦ u e_i` by units mod `d_i`, and transvections
    /// `e_i ↦ e_i + c e_j` with `c = d_j / gcd(d_i, d_j)`, the least
    /// multiple keeping the image of order dividing `d_i`.
    pub fn abelian_automorphism_generators(&self) -> Option<Vec<Vec<Elem>>> {
        let inv = self.abelian_invariants()?;
        let (big_n, coords) = self.abelian_coordinates()?;
        let k = inv.len();
        let scale: Vec<u32> = inv.iter().map(|&d| big_n / d as u32).collect();
        let mut basis = vec![0; k];
        for (x, c) in coords.iter().enumerate() {
            let support: Vec<usize> = (0..k).filter(|&i| c[i] != 0).collect();
            if let [i] = support[..] {
                if c[i] == scale[i] {
                    basis[i] = x;
                }
            }
        }
        // phi(x) = sum_i c_i(x) phi(e_i)
        let table_for = |images: &[Elem]| -> Vec<Elem> {
            coords
                .iter()
                .map(|c| {
                    (0..k).fold(0, |acc, i| {
                        self.mul(acc, self.pow(images[i], i64::from(c[i] / scale[i])))
                    })
                })
                .collect()
        };
        let mut gens = Vec::new();
        for i in 0..k {
            for u in 2..inv[i] {
                if num_integer::gcd(u, inv[i]) == 1 {
                    let mut images = basis.clone();
                    images[i] = self.pow(basis[i], u as i64);
                    gens.push(table_for(&images));
                }
            }
            for j in (0..k).filter(|&j| j != i) {
                let c = inv[j] / num_integer::gcd(inv[i], inv[j]);
                let mut images = basis.clone();
                images[i] = self.mul(basis[i], self.pow(basis[j], c as i64));
                gens.push(table_for(&images));
            }
        }
        Some(gens)
    }

    fn find_basis(&self, inv: &[usize], basis: &mut Vec<Elem>) -> bool {
        let i = basis.len();
        if i == inv.len() {
            return true;
        }
        let span = self.subgroup_generated(basis);
        let target: usize = inv[..=i].iter().product();
        for x in 1..self.order() {
            if self.elem_order(x) != inv[i] {
                continue;
            }
            basis.push(x);
            if self.subgroup_generated(basis).len() == target
                && span.len() * inv[i] == target
                && self.find_basis(inv, basis)
            {
                return true;
            }
            basis.pop();
        }
        false
    }
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    while x > 1 {
        if !x.is_multiple_of(p) {
            return false;
        }
        x /= p;
    }
    true
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}
