//! Irreducible character tables with exact values in `Z[ζ_e]`.
//!
//! Abelian groups use the dual-group identification directly: with elements
//! given as coordinate vectors in `(Z/NZ)^m`, the character labelled `n` sends
//! `x` to `ζ_N^{n·x}`. Other groups go through the Burnside–Dixon method over a
//! prime field `F_p` with `p ≡ 1 (mod e)`; values are lifted by recovering the
//! eigenvalue multiplicities of every element, which are small integers.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclo, CyclotomicField};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Provenance, MAX_ORDER};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: Elem,
    pub members: Vec<Elem>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Character {
    pub degree: usize,
    /// Value on each conjugacy class.
    pub values: Vec<Cyclo>,
    /// `eigen[c][a]`: multiplicity of the eigenvalue `ζ_e^a` of the
    /// representation at the representative of class `c`.
    pub eigen: Vec<Vec<u32>>,
    /// Index of the complex-conjugate character.
    pub dual: usize,
    /// Frobenius–Schur indicator.
    pub fs: i32,
    /// For abelian groups with coordinates: the lexicographically least
    /// vector `n` with `χ(x) = ζ_N^{n·x}`.
    pub label: Option<Vec<u32>>,
}

impl Character {
    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }
}

/// Character table of a finite group.
///
/// Invariants: as many characters as classes, exact row orthogonality,
/// `Σ degree² = |G|`, trivial character at index 0, identity class at index 0.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: FiniteGroup,
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
    pub exponent: usize,
    pub field: CyclotomicField,
    pub characters: Vec<Character>,
    /// `square_class[c]`: class of `g²` for `g` in class `c`.
    pub square_class: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableDump {
    order: usize,
    table: Vec<u32>,
    exponent: usize,
    classes: Vec<ConjugacyClass>,
    characters: Vec<Character>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn value_at(&self, chi: usize, x: Elem) -> &Cyclo {
        &self.characters[chi].values[self.class_of[x]]
    }

    /// Multiplicities of eigenvalues `ζ_e^a` of `chi` at the element `x`.
    pub fn eigen_at(&self, chi: usize, x: Elem) -> &[u32] {
        &self.characters[chi].eigen[self.class_of[x]]
    }

    pub fn frobenius_schur(&self, chi: usize) -> i32 {
        self.characters[chi].fs
    }

    /// Index of the character whose label is `n`, for abelian tables.
    pub fn index_of_label(&self, n: &[u32]) -> Option<usize> {
        self.characters
            .iter()
            .position(|c| c.label.as_deref() == Some(n))
    }

    /// Standard inner product `⟨χ_i, χ_j⟩`, computed exactly.
    pub fn inner_product(&self, i: usize, j: usize) -> Result<i64> {
        let f = &self.field;
        let mut acc = f.zero();
        for (c, class) in self.classes.iter().enumerate() {
            let term = f.mul(
                &self.characters[i].values[c],
                &f.conj(&self.characters[j].values[c]),
            );
            acc = f.add(&acc, &f.scale(&term, class.size() as i64));
        }
        let n = self.group.order() as i64;
        match f.as_integer(&acc) {
            Some(v) if v % n == 0 => Ok(v / n),
            _ => Err(Error::internal("non-integral character inner product")),
        }
    }

    /// Exhaustive check of the table invariants.
    pub fn verify(&self) -> Result<()> {
        let k = self.num_classes();
        if self.characters.len() != k {
            return Err(Error::internal(
                "number of characters differs from number of classes",
            ));
        }
        let sum_sq: usize = self.characters.iter().map(|c| c.degree * c.degree).sum();
        if sum_sq != self.group.order() {
            return Err(Error::internal("sum of squared degrees differs from |G|"));
        }
        for i in 0..k {
            for j in 0..k {
                let want = i64::from(i == j);
                if self.inner_product(i, j)? != want {
                    return Err(Error::internal(format!(
                        "row orthogonality fails for characters {i}, {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Column orthogonality: `Σ_χ χ(g_a) conj χ(g_b) = δ_ab |C_G(g_a)|`.
    pub fn verify_columns(&self) -> Result<()> {
        let f = &self.field;
        let n = self.group.order() as i64;
        for a in 0..self.num_classes() {
            for b in 0..self.num_classes() {
                let mut acc = f.zero();
                for ch in &self.characters {
                    acc = f.add(&acc, &f.mul(&ch.values[a], &f.conj(&ch.values[b])));
                }
                let want = if a == b {
                    n / self.classes[a].size() as i64
                } else {
                    0
                };
                if f.as_integer(&acc) != Some(want) {
                    return Err(Error::internal(format!(
                        "column orthogonality fails for classes {a}, {b}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.dump()).expect("table dump serializes")
    }

    fn dump(&self) -> TableDump {
        TableDump {
            order: self.group.order(),
            table: self.group.raw_table().to_vec(),
            exponent: self.exponent,
            classes: self.classes.clone(),
            characters: self.characters.clone(),
        }
    }
}

type CacheKey = (Vec<u32>, Option<Vec<Vec<u32>>>);

fn memo() -> &'static Mutex<HashMap<CacheKey, Arc<CharacterTable>>> {
    static MEMO: OnceLock<Mutex<HashMap<CacheKey, Arc<CharacterTable>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn disk_dir() -> &'static Mutex<Option<PathBuf>> {
    static DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| Mutex::new(None))
}

/// Enables (or disables with `None`) the on-disk cache for non-abelian
/// tables.
pub fn set_disk_cache(dir: Option<PathBuf>) {
    *disk_dir().lock().expect("cache lock") = dir;
}

/// FNV-1a over the multiplication table; only used to name cache files.
fn table_hash(table: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &v in table {
        for b in v.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Character table of `g`, memoised process-wide.
pub fn character_table(g: &FiniteGroup) -> Result<Arc<CharacterTable>> {
    let coords = abelian_coords(g);
    let key: CacheKey = (
        g.raw_table().to_vec(),
        coords.as_ref().map(|(_, c)| c.clone()),
    );
    if let Some(t) = memo().lock().expect("cache lock").get(&key) {
        return Ok(t.clone());
    }
    let table = Arc::new(match coords {
        Some((n, c)) => abelian_table(g, n, &c)?,
        None => load_or_compute_dixon(g)?,
    });
    memo()
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert_with(|| table.clone());
    Ok(table)
}

fn abelian_coords(g: &FiniteGroup) -> Option<(u32, Vec<Vec<u32>>)> {
    match g.provenance() {
        Provenance::Abelian {
            modulus, coords, ..
        } => Some((*modulus, coords.clone())),
        Provenance::Cayley => g.abelian_coordinates(),
    }
}

fn load_or_compute_dixon(g: &FiniteGroup) -> Result<CharacterTable> {
    let dir = disk_dir().lock().expect("cache lock").clone();
    let path = dir.map(|d| d.join(format!("chartable-{:016x}.json", table_hash(g.raw_table()))));
    if let Some(path) = &path {
        if let Ok(text) = std::fs::read_to_string(path) {
            if let Ok(dump) = serde_json::from_str::<TableDump>(&text) {
                if dump.table == g.raw_table() {
                    let t = from_dump(g, dump);
                    if t.verify().is_ok() {
                        return Ok(t);
                    }
                }
            }
        }
    }
    let t = dixon_table(g)?;
    if let Some(path) = &path {
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        // a failed write only loses the cache entry
        let _ = std::fs::write(path, serde_json::to_string(&t.dump()).unwrap_or_default());
    }
    Ok(t)
}

fn from_dump(g: &FiniteGroup, dump: TableDump) -> CharacterTable {
    let mut class_of = vec![0; g.order()];
    for (c, class) in dump.classes.iter().enumerate() {
        for &x in &class.members {
            class_of[x] = c;
        }
    }
    let square_class = dump
        .classes
        .iter()
        .map(|c| class_of[g.mul(c.representative, c.representative)])
        .collect();
    CharacterTable {
        group: g.clone(),
        classes: dump.classes,
        class_of,
        exponent: dump.exponent,
        field: CyclotomicField::new(dump.exponent),
        characters: dump.characters,
        square_class,
    }
}

fn classes_of(g: &FiniteGroup) -> (Vec<ConjugacyClass>, Vec<usize>, Vec<usize>) {
    let classes: Vec<ConjugacyClass> = g
        .conjugacy_classes()
        .into_iter()
        .map(|members| ConjugacyClass {
            representative: members[0],
            members,
        })
        .collect();
    let mut class_of = vec![0; g.order()];
    for (c, class) in classes.iter().enumerate() {
        for &x in &class.members {
            class_of[x] = c;
        }
    }
    let square_class = classes
        .iter()
        .map(|c| class_of[g.mul(c.representative, c.representative)])
        .collect();
    (classes, class_of, square_class)
}

/// Fills `dual` and `fs` and sorts characters canonically: trivial first,
/// then by degree, then by label (abelian) or value vectors.
fn finish(
    g: &FiniteGroup,
    field: &CyclotomicField,
    classes: &[ConjugacyClass],
    square_class: &[usize],
    mut chars: Vec<Character>,
) -> Result<Vec<Character>> {
    chars.sort_by(|a, b| {
        let trivial = |c: &Character| c.degree != 1 || c.eigen.iter().any(|e| e[0] != 1);
        (trivial(a), a.degree, &a.label, &a.values).cmp(&(
            trivial(b),
            b.degree,
            &b.label,
            &b.values,
        ))
    });
    let conj_vals: Vec<Vec<Cyclo>> = chars
        .iter()
        .map(|c| c.values.iter().map(|v| field.conj(v)).collect())
        .collect();
    let n = g.order() as i64;
    for i in 0..chars.len() {
        chars[i].dual = chars
            .iter()
            .position(|c| c.values == conj_vals[i])
            .ok_or_else(|| Error::internal("character table is not closed under conjugation"))?;
        let mut acc = field.zero();
        for (c, class) in classes.iter().enumerate() {
            let v = &chars[i].values[square_class[c]];
            acc = field.add(&acc, &field.scale(v, class.size() as i64));
        }
        chars[i].fs = match field.as_integer(&acc) {
            Some(v) if v % n == 0 && (-1..=1).contains(&(v / n)) => (v / n) as i32,
            _ => return Err(Error::internal("non-integral Frobenius–Schur indicator")),
        };
    }
    Ok(chars)
}

fn abelian_table(g: &FiniteGroup, modulus: u32, coords: &[Vec<u32>]) -> Result<CharacterTable> {
    let order = g.order();
    let e = g.exponent();
    let field = CyclotomicField::new(e);
    let (classes, class_of, square_class) = classes_of(g);
    let m = coords[0].len();
    let nn = modulus as u64;
    let mut seen: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    // lexicographic walk over (Z/NZ)^m; the first n hitting a new value
    // vector is its least label
    let mut n = vec![0u32; m];
    loop {
        let vals: Vec<u32> = coords
            .iter()
            .map(|x| {
                let s: u64 = n
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| u64::from(a) * u64::from(b))
                    .sum();
                (s % nn) as u32
            })
            .collect();
        seen.entry(vals).or_insert_with(|| n.clone());
        if seen.len() == order {
            break;
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Err(Error::internal("dual group enumeration incomplete"));
            }
            i -= 1;
            n[i] += 1;
            if n[i] < modulus {
                break;
            }
            n[i] = 0;
        }
    }
    let mut chars = Vec::with_capacity(order);
    for (vals, label) in seen {
        let mut values = Vec::with_capacity(classes.len());
        let mut eigen = Vec::with_capacity(classes.len());
        for class in &classes {
            let f = u64::from(vals[class.representative]);
            let a = (f * e as u64 / nn) as usize % e;
            debug_assert_eq!((f * e as u64) % nn, 0);
            let mut ev = vec![0u32; e];
            ev[a] = 1;
            values.push(field.root(a as i64));
            eigen.push(ev);
        }
        chars.push(Character {
            degree: 1,
            values,
            eigen,
            dual: 0,
            fs: 0,
            label: Some(label),
        });
    }
    let characters = finish(g, &field, &classes, &square_class, chars)?;
    Ok(CharacterTable {
        group: g.clone(),
        classes,
        class_of,
        exponent: e,
        field,
        characters,
        square_class,
    })
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn primitive_root_of_unity(e: u64, p: u64) -> u64 {
    let factors = crate::group::prime_factors((p - 1) as usize);
    let gen = (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&q| pow_mod(g, (p - 1) / q as u64, p) != 1)
        })
        .expect("F_p^* is cyclic");
    pow_mod(gen, (p - 1) / e, p)
}

/// Basis of `{c : Σ_i c_i cols[i] = 0}` over `F_p`.
fn column_relations(cols: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let s = cols.len();
    if s == 0 {
        return Vec::new();
    }
    let k = cols[0].len();
    // rows of the k x s matrix
    let mut m: Vec<Vec<u64>> = (0..k)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..s {
        let Some(pr) = (row..k).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for v in m[row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..k {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..s {
                    m[r][c] = (m[r][c] + p - f * m[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == k {
            break;
        }
    }
    let free: Vec<usize> = (0..s).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; s];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

fn dixon_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let order = g.order();
    if order > MAX_ORDER {
        return Err(Error::Group(crate::error::GroupError::TooLarge(order)));
    }
    let e = g.exponent() as u64;
    let mut p = e + 1;
    let mut attempts = 0;
    while attempts < 40 {
        if p > 2 * order as u64 && is_prime(p) {
            attempts += 1;
            if let Some(t) = dixon_at_prime(g, p)? {
                return Ok(t);
            }
        }
        p += e;
    }
    Err(Error::NoDixonPrime)
}

fn dixon_at_prime(g: &FiniteGroup, p: u64) -> Result<Option<CharacterTable>> {
    let order = g.order();
    let e = g.exponent();
    let field = CyclotomicField::new(e);
    let (classes, class_of, square_class) = classes_of(g);
    let k = classes.len();
    // c[j][a][l] = #{x in C_j : x^{-1} z_l in C_a}
    let mut structure = vec![vec![vec![0u64; k]; k]; k];
    for (j, cj) in classes.iter().enumerate() {
        for (l, cl) in classes.iter().enumerate() {
            for &x in &cj.members {
                let a = class_of[g.mul(g.inv(x), cl.representative)];
                structure[j][a][l] += 1;
            }
        }
    }
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces = vec![identity];
    for mj in structure.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let images: Vec<Vec<u64>> = space
                .iter()
                .map(|b| {
                    (0..k)
                        .map(|a| (0..k).map(|l| mj[a][l] * b[l] % p).sum::<u64>() % p)
                        .collect()
                })
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                let cols: Vec<Vec<u64>> = images
                    .iter()
                    .zip(&space)
                    .map(|(im, b)| {
                        im.iter()
                            .zip(b)
                            .map(|(&x, &y)| (x + p - lambda * y % p) % p)
                            .collect()
                    })
                    .collect();
                let rel = column_relations(&cols, p);
                if rel.is_empty() {
                    continue;
                }
                found += rel.len();
                let sub: Vec<Vec<u64>> = rel
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|a| {
                                c.iter()
                                    .zip(&space)
                                    .map(|(&ci, b)| ci * b[a] % p)
                                    .sum::<u64>()
                                    % p
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == space.len() {
                    break;
                }
            }
            if found != space.len() {
                return Ok(None);
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != k {
        return Ok(None);
    }
    let z = primitive_root_of_unity(e as u64, p);
    let inverse_class: Vec<usize> = classes
        .iter()
        .map(|c| class_of[g.inv(c.representative)])
        .collect();
    let mut chars = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Ok(None);
        }
        let inv0 = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * inv0 % p).collect();
        let mut s = 0;
        for l in 0..k {
            s = (s + w[l] * w[inverse_class[l]] % p * inv_mod(classes[l].size() as u64, p)) % p;
        }
        if s == 0 {
            return Ok(None);
        }
        let d2 = order as u64 % p * inv_mod(s, p) % p;
        let Some(degree) = (1..=8u64).find(|d| d * d % p == d2) else {
            return Ok(None);
        };
        let vals_p: Vec<u64> = (0..k)
            .map(|l| w[l] * degree % p * inv_mod(classes[l].size() as u64, p) % p)
            .collect();
        let mut values = Vec::with_capacity(k);
        let mut eigen = Vec::with_capacity(k);
        for class in &classes {
            let x = class.representative;
            let o = g.elem_order(x);
            let step = e / o;
            let zo = pow_mod(z, step as u64, p);
            let inv_o = inv_mod(o as u64, p);
            let mut ev = vec![0u32; e];
            let mut total = 0u64;
            for a in 0..o {
                let mut acc = 0u64;
                let mut y = 0;
                for kk in 0..o {
                    let root = pow_mod(zo, ((o - (a * kk) % o) % o) as u64, p);
                    acc = (acc + vals_p[class_of[y]] * root) % p;
                    y = g.mul(y, x);
                }
                let m = acc * inv_o % p;
                if m > degree {
                    return Ok(None);
                }
                ev[a * step] = m as u32;
                total += m;
            }
            if total != degree {
                return Ok(None);
            }
            let coeffs: Vec<i64> = ev.iter().map(|&c| i64::from(c)).collect();
            values.push(field.from_power_coeffs(&coeffs));
            eigen.push(ev);
        }
        chars.push(Character {
            degree: degree as usize,
            values,
            eigen,
            dual: 0,
            fs: 0,
            label: None,
        });
    }
    let Ok(characters) = finish(g, &field, &classes, &square_class, chars) else {
        return Ok(None);
    };
    let table = CharacterTable {
        group: g.clone(),
        classes,
        class_of,
        exponent: e,
        field,
        characters,
        square_class,
    };
    if table.verify().is_err() {
        return Ok(None);
    }
    Ok(Some(table))
}

/// Which σ-eigenspace of a representation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Plus,
    Minus,
    All,
}

/// Decomposition of a representation into irreducibles, with the scalar by
/// which a central involution acts on each irreducible.
#[derive(Debug, Clone)]
pub struct RepDecomposition {
    pub table: Arc<CharacterTable>,
    pub mult: Vec<u64>,
    pub sigma_sign: Vec<i8>,
}

impl RepDecomposition {
    pub fn in_part(&self, chi: usize, part: Part) -> bool {
        match part {
            Part::Plus => self.sigma_sign[chi] == 1,
            Part::Minus => self.sigma_sign[chi] == -1,
            Part::All => true,
        }
    }

    pub fn dimension(&self, part: Part) -> u64 {
        (0..self.mult.len())
            .filter(|&i| self.in_part(i, part))
            .map(|i| self.mult[i] * self.table.characters[i].degree as u64)
            .sum()
    }

    /// Character of the selected part, one value per class.
    pub fn part_character(&self, part: Part) -> Vec<Cyclo> {
        let t = &self.table;
        let f = &t.field;
        (0..t.num_classes())
            .map(|c| {
                let mut acc = f.zero();
                for (i, ch) in t.characters.iter().enumerate() {
                    if self.mult[i] > 0 && self.in_part(i, part) {
                        acc = f.add(&acc, &f.scale(&ch.values[c], self.mult[i] as i64));
                    }
                }
                acc
            })
            .collect()
    }
}

/// `dim (S² V_part)^G` via `(1/|G|) Σ_g (ψ(g)² + ψ(g²))/2`.
pub fn sym2_by_character_formula(v: &RepDecomposition, part: Part) -> Result<u64> {
    let t = &v.table;
    let f = &t.field;
    let psi = v.part_character(part);
    let mut acc = f.zero();
    for (c, class) in t.classes.iter().enumerate() {
        let term = f.add(&f.mul(&psi[c], &psi[c]), &psi[t.square_class[c]]);
        acc = f.add(&acc, &f.scale(&term, class.size() as i64));
    }
    let denom = 2 * t.group.order() as i64;
    match f.as_integer(&acc) {
        Some(x) if x >= 0 && x % denom == 0 => Ok((x / denom) as u64),
        _ => Err(Error::internal(
            "non-integral symmetric-square invariant dimension",
        )),
    }
}

/// `dim (S² V_part)^G` from multiplicities, duality and Frobenius–Schur data.
pub fn sym2_by_isotypic_formula(v: &RepDecomposition, part: Part) -> u64 {
    let t = &v.table;
    let mut total = 0;
    for (i, ch) in t.characters.iter().enumerate() {
        if !v.in_part(i, part) {
            continue;
        }
        let m = v.mult[i];
        let j = ch.dual;
        if j != i {
            if i < j && v.in_part(j, part) {
                total += m * v.mult[j];
            }
        } else if ch.fs == 1 {
            total += m * (m + 1) / 2;
        } else if m > 0 {
            total += m * (m - 1) / 2;
        }
    }
    total
}

/// `dim (S² V_part)^G`, computed by both formulas and cross-checked.
pub fn sym2_invariant_dimension(v: &RepDecomposition, part: Part) -> Result<u64> {
    let a = sym2_by_character_formula(v, part)?;
    let b = sym2_by_isotypic_formula(v, part);
    if a != b {
        return Err(Error::internal(format!(
            "symmetric-square dimension formulas disagree ({a} vs {b})"
        )));
    }
    Ok(a)
}
