//! Prym data: a group, a monodromy tuple and a central involution, with the
//! derived invariants of the tower `C̃ → C → P¹`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::characters::{character_table, CharacterTable, RepDecomposition};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Provenance};

#[derive(Debug, Clone)]
pub struct PrymDatum {
    pub group: FiniteGroup,
    pub tuple: Vec<Elem>,
    pub sigma: Elem,
    pub r: usize,
    /// Degree of the branch divisor of `C̃ → C`.
    pub b: u64,
    pub g_tilde: u64,
    pub g: u64,
    /// Prym dimension `g̃ - g`.
    pub p: u64,
    /// Element orders `m_j` of the tuple entries.
    pub orders: Vec<usize>,
}

impl PrymDatum {
    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    pub fn b_ge_6(&self) -> bool {
        self.b >= 6
    }
}

/// Checks every datum invariant and fills the derived fields.
pub fn validate_datum(group: &FiniteGroup, tuple: &[Elem], sigma: Elem) -> Result<PrymDatum> {
    let r = tuple.len();
    if r < 4 {
        return Err(Error::TupleTooShort(r));
    }
    let n = group.order();
    if let Some(&bad) = tuple.iter().chain([&sigma]).find(|&&x| x >= n) {
        return Err(Error::Group(crate::error::GroupError::NoSuchElement(bad)));
    }
    if let Some(i) = tuple.iter().position(|&x| x == 0) {
        return Err(Error::IdentityEntry(i + 1));
    }
    if tuple.iter().fold(0, |acc, &x| group.mul(acc, x)) != 0 {
        return Err(Error::ProductNotIdentity);
    }
    if !group.generates(tuple) {
        return Err(Error::NotGenerating);
    }
    if group.elem_order(sigma) != 2 || !group.is_central(sigma) {
        return Err(Error::SigmaNotCentralInvolution);
    }
    let orders: Vec<usize> = tuple.iter().map(|&x| group.elem_order(x)).collect();
    let mut d = PrymDatum {
        group: group.clone(),
        tuple: tuple.to_vec(),
        sigma,
        r,
        b: 0,
        g_tilde: 0,
        g: 0,
        p: 0,
        orders,
    };
    d.b = branch_degree_b(&d);
    let (gt, g, p) = genera(&d)?;
    d.g_tilde = gt;
    d.g = g;
    d.p = p;
    Ok(d)
}

/// `Σ |G̃|/m_i` over the entries whose cyclic subgroup contains `σ`.
pub fn branch_degree_b(d: &PrymDatum) -> u64 {
    let n = d.group.order();
    d.tuple
        .iter()
        .zip(&d.orders)
        .filter(|(&x, _)| d.group.subgroup_generated(&[x]).contains(&d.sigma))
        .map(|(_, &m)| (n / m) as u64)
        .sum()
}

/// `2g̃ - 2` from Riemann–Hurwitz, as an exact integer.
fn riemann_hurwitz_twice(order: usize, orders: &[usize]) -> i64 {
    let n = order as i64;
    -2 * n
        + orders
            .iter()
            .map(|&m| (n / m as i64) * (m as i64 - 1))
            .sum::<i64>()
}

/// `(g̃, g, p)`. For abelian groups `g̃` is recomputed from the gcd form of
/// the genus formula and compared.
pub fn genera(d: &PrymDatum) -> Result<(u64, u64, u64)> {
    let twice = riemann_hurwitz_twice(d.group.order(), &d.orders) + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::InconsistentDatum(format!(
            "Riemann–Hurwitz gives 2g̃ = {twice}"
        )));
    }
    let gt = twice / 2;
    if let Some((modulus, columns)) = abelian_columns(d) {
        // 2N(g̃ - 1) = |G|(N(r-2) - Σ_j gcd(N, column_j))
        let nn = i64::from(modulus);
        let sum_gcd: i64 = columns
            .iter()
            .map(|col| {
                col.iter()
                    .fold(nn, |acc, &v| num_integer::gcd(acc, i64::from(v)))
            })
            .sum();
        let rhs = d.group.order() as i64 * (nn * (d.r as i64 - 2) - sum_gcd);
        if 2 * nn * (gt - 1) != rhs {
            return Err(Error::InconsistentDatum(
                "genus formulas disagree on an abelian datum".into(),
            ));
        }
    }
    if !d.b.is_multiple_of(2) {
        return Err(Error::InconsistentDatum(format!(
            "odd branch degree b = {}",
            d.b
        )));
    }
    let num = gt + 1 - (d.b / 2) as i64;
    if num < 0 || num % 2 != 0 {
        return Err(Error::InconsistentDatum(format!(
            "g = (g̃ + 1 - b/2)/2 is not a nonnegative integer (g̃ = {gt}, b = {})",
            d.b
        )));
    }
    let g = num / 2;
    Ok((gt as u64, g as u64, (gt - g) as u64))
}

/// Coordinates of the tuple entries when the group is abelian: the modulus
/// and one column per entry.
pub fn abelian_columns(d: &PrymDatum) -> Option<(u32, Vec<Vec<u32>>)> {
    match d.group.provenance() {
        Provenance::Abelian { modulus, .. } => Some((
            *modulus,
            d.tuple
                .iter()
                .map(|&x| d.group.coords(x).expect("abelian coordinates").to_vec())
                .collect(),
        )),
        Provenance::Cayley => {
            let (n, coords) = d.group.abelian_coordinates()?;
            Some((n, d.tuple.iter().map(|&x| coords[x].clone()).collect()))
        }
    }
}

/// Multiplicity of `U` in `H⁰(C̃, ω)` from the local monodromy eigenvalues:
/// `-deg U + Σ_j Σ_a N_{j,a} (e - a)/e` over eigenvalues `ζ_e^a ≠ 1`.
pub fn chevalley_weil(table: &CharacterTable, chi: usize, tuple: &[Elem]) -> Result<u64> {
    if chi == 0 {
        return Ok(0);
    }
    let e = table.exponent as i64;
    let mut num: i64 = 0;
    for &x in tuple {
        for (a, &m) in table.eigen_at(chi, x).iter().enumerate().skip(1) {
            num += i64::from(m) * (e - a as i64);
        }
    }
    let deg = table.characters[chi].degree as i64;
    if num % e != 0 {
        return Err(Error::internal(
            "eigenvalue convention broken: non-integral multiplicity",
        ));
    }
    let mult = num / e - deg;
    if mult < 0 {
        return Err(Error::internal(
            "eigenvalue convention broken: negative multiplicity",
        ));
    }
    Ok(mult as u64)
}

/// Decomposition of `V = H⁰(C̃, ω)` into irreducibles with the sign of `σ`.
pub fn hodge_decomposition(d: &PrymDatum) -> Result<RepDecomposition> {
    let table: Arc<CharacterTable> = character_table(&d.group)?;
    let k = table.num_classes();
    let mut mult = Vec::with_capacity(k);
    let mut sign = Vec::with_capacity(k);
    for chi in 0..k {
        mult.push(chevalley_weil(&table, chi, &d.tuple)?);
        let deg = table.characters[chi].degree as i64;
        let v = table.field.as_integer(table.value_at(chi, d.sigma));
        sign.push(match v {
            Some(x) if x == deg => 1,
            Some(x) if x == -deg => -1,
            _ => return Err(Error::internal("central involution does not act by ±1")),
        });
    }
    Ok(RepDecomposition {
        table,
        mult,
        sigma_sign: sign,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidDirection {
    Left,
    Right,
}

/// Elementary braid move at position `i` (1-based, `1 ≤ i ≤ r-1`).
///
/// Right: `(g_i, g_{i+1}) ↦ (g_i g_{i+1} g_i⁻¹, g_i)`; left is its inverse,
/// `(g_i, g_{i+1}) ↦ (g_{i+1}, g_{i+1}⁻¹ g_i g_{i+1})`.
pub fn braid_move(
    group: &FiniteGroup,
    tuple: &[Elem],
    i: usize,
    dir: BraidDirection,
) -> Result<Vec<Elem>> {
    if i == 0 || i >= tuple.len() {
        return Err(Error::BraidIndex {
            index: i,
            len: tuple.len(),
        });
    }
    let mut out = tuple.to_vec();
    let (a, b) = (tuple[i - 1], tuple[i]);
    match dir {
        BraidDirection::Right => {
            out[i - 1] = group.mul(group.mul(a, b), group.inv(a));
            out[i] = a;
        }
        BraidDirection::Left => {
            out[i - 1] = b;
            out[i] = group.mul(group.mul(group.inv(b), a), b);
        }
    }
    Ok(out)
}

/// Group description inside a datum file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Abelian {
        #[serde(rename = "N")]
        modulus: u32,
        matrix: Vec<Vec<u32>>,
    },
    CayleyFile(String),
}

/// An element: a coordinate vector (abelian groups) or an index (Cayley).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemSpec {
    Coords(Vec<u32>),
    Index(usize),
}

/// On-disk datum description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub group: GroupSpec,
    pub tuple: Vec<ElemSpec>,
    pub sigma: ElemSpec,
}

impl DatumFile {
    pub fn parse(text: &str, context: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(context, e.to_string()))
    }

    /// Builds the group and validates the datum. Cayley paths are resolved
    /// against `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<PrymDatum> {
        let group = match &self.group {
            GroupSpec::Abelian { modulus, matrix } => {
                FiniteGroup::abelian_from_columns(*modulus, matrix)?
            }
            GroupSpec::CayleyFile(path) => {
                let full: PathBuf = base_dir.join(path);
                let text = std::fs::read_to_string(&full).map_err(|source| Error::Io {
                    path: full.display().to_string(),
                    source,
                })?;
                FiniteGroup::parse_cayley(&text)
                    .map_err(|e| Error::parse(full.display().to_string(), e.to_string()))?
            }
        };
        let elem = |spec: &ElemSpec, what: &str| -> Result<Elem> {
            match spec {
                ElemSpec::Index(i) if *i < group.order() => Ok(*i),
                ElemSpec::Coords(c) => group.index_of_coords(c).ok_or_else(|| {
                    Error::parse(what, format!("{c:?} is not an element of the group"))
                }),
                ElemSpec::Index(i) => Err(Error::parse(what, format!("no element with index {i}"))),
            }
        };
        let tuple = self
            .tuple
            .iter()
            .enumerate()
            .map(|(i, s)| elem(s, &format!("tuple entry {}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let sigma = elem(&self.sigma, "sigma")?;
        validate_datum(&group, &tuple, sigma)
    }

    /// Datum file for `d`. Abelian-provenance groups are written inline;
    /// others refer to `cayley_path`.
    pub fn from_datum(d: &PrymDatum, cayley_path: Option<&str>) -> Self {
        let elem = |x: Elem| match d.group.coords(x) {
            Some(c) => ElemSpec::Coords(c.to_vec()),
            None => ElemSpec::Index(x),
        };
        let group = match d.group.provenance() {
            Provenance::Abelian {
                modulus, matrix, ..
            } => GroupSpec::Abelian {
                modulus: *modulus,
                matrix: matrix.clone(),
            },
            Provenance::Cayley => {
                GroupSpec::CayleyFile(cayley_path.unwrap_or("group.txt").to_string())
            }
        };
        DatumFile {
            group,
            tuple: d.tuple.iter().map(|&x| elem(x)).collect(),
            sigma: elem(d.sigma),
        }
    }
}

impl DatumFile {
    /// Indented JSON with number arrays kept on one line.
    pub fn to_json_text(&self) -> String {
        let v = serde_json::to_value(self).expect("datum files serialize");
        let mut out = String::new();
        render_json(&v, 0, &mut out);
        out.push('\n');
        out
    }
}

fn render_json(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(
                &serde_json::to_string(v)
                    .expect("scalars serialize")
                    .replace(',', ", "),
            );
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                render_json(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(k.clone())));
                render_json(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Reads and validates a datum file.
pub fn load_datum(path: &Path) -> Result<PrymDatum> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file = DatumFile::parse(&text, &path.display().to_string())?;
    file.resolve(path.parent().unwrap_or(Path::new(".")))
}
