use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use prym_core::abelian::{
    anti_invariant_basis, build_product_system, eigen_dims, sample_points, to_rationals,
    CoverMatrix,
};
use prym_core::characters::{set_disk_cache, Part};
use prym_core::conditions::{classify_with, BStatus, ClassifyOptions};
use prym_core::datum::{hodge_decomposition, load_datum, PrymDatum};
use prym_core::group::FiniteGroup;
use prym_core::report;
use prym_core::search::{
    run_search, sort_rows, Equivalence, GroupSource, NamedGroup, ReportRow, SearchConfig,
};
use prym_core::table::{parse_reference, reference_rows, reproduce_table, TableScope};

use crate::{
    CheckArgs, DumpArgs, DumpWhat, EquivalenceArg, Format, ScopeArgs, SearchArgs, TableArgs,
};

/// `PRYM_CACHE_DIR`, or `prym` under the user cache directory. An empty
/// value disables the disk cache.
pub fn configure_cache() {
    let dir = match std::env::var_os("PRYM_CACHE_DIR") {
        Some(v) if v.is_empty() => None,
        Some(v) => Some(PathBuf::from(v)),
        None => dirs::cache_dir().map(|d| d.join("prym")),
    };
    set_disk_cache(dir);
}

fn load(path: &Path) -> Result<PrymDatum> {
    load_datum(path).with_context(|| path.display().to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check(a: &CheckArgs) -> Result<()> {
    let d = load(&a.datum)?;
    let v = hodge_decomposition(&d)?;
    let opts = ClassifyOptions {
        seed: a.seed,
        allow_symbolic: a.allow_symbolic,
        ..ClassifyOptions::default()
    };
    let rep = classify_with(&d, &v, &opts)?;
    let mut line = format!(
        "g̃={} g={} b={} p={} dimS2={} A={} B1={} B={}",
        d.g_tilde,
        d.g,
        d.b,
        d.p,
        rep.dim_s2,
        yes_no(rep.cond_a),
        yes_no(rep.cond_b1),
        rep.b_status
    );
    if let BStatus::RefutedGeneric { kernel, .. } = &rep.b_status {
        line += &format!(" kernel=[{}]", kernel.join(", "));
    }
    println!("{line}");
    if !rep.sampled_ranks.is_empty() {
        println!("sampled ranks: {:?}", rep.sampled_ranks);
    }
    if let Some(s) = rep.symbolic_rank {
        println!("symbolic rank: {s}");
    }
    if let BStatus::Inconclusive = rep.b_status {
        if d.is_abelian() && !a.allow_symbolic {
            println!(
                "sampled ranks are deficient; rerun with --allow-symbolic for the generic rank"
            );
        }
    }
    match CoverMatrix::from_datum(&d)? {
        Some(c) => {
            println!("eigenspace dimensions:");
            for (n, dim) in eigen_dims(&c)? {
                let parity = if c.is_odd(&n) { "odd" } else { "even" };
                let label: Vec<String> = n.iter().map(u32::to_string).collect();
                println!("  d({}) = {dim} ({parity})", label.join(","));
            }
        }
        None => {
            println!("V₋ = {}", decomposition_text(&v, Part::Minus));
            println!("V₊ = {}", decomposition_text(&v, Part::Plus));
        }
    }
    Ok(())
}

fn decomposition_text(v: &prym_core::characters::RepDecomposition, part: Part) -> String {
    let terms: Vec<String> = (0..v.mult.len())
        .filter(|&i| v.mult[i] > 0 && v.in_part(i, part))
        .map(|i| {
            let deg = v.table.characters[i].degree;
            format!("χ{}(deg {deg})×{}", i + 1, v.mult[i])
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn equivalence(e: EquivalenceArg) -> Equivalence {
    match e {
        EquivalenceArg::FullAut => Equivalence::FullAut,
        EquivalenceArg::SigmaFixing => Equivalence::SigmaFixing,
    }
}

fn cayley_groups(paths: &[PathBuf]) -> Result<Vec<NamedGroup>> {
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).with_context(|| p.display().to_string())?;
            let group =
                FiniteGroup::parse_cayley(&text).with_context(|| p.display().to_string())?;
            let label = p
                .file_stem()
                .map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into());
            Ok(NamedGroup { label, group })
        })
        .collect()
}

/// Abelian groups are searched unless only Cayley files were given and no
/// order or genus bound limits the abelian enumeration.
fn search_abelian(s: &ScopeArgs) -> bool {
    if !s.abelian_only && s.cayley.is_empty() {
        eprintln!("warning: non-abelian groups need --cayley files; searching abelian groups only");
    }
    s.abelian_only || s.cayley.is_empty() || s.max_order.is_some() || s.max_gtilde.is_some()
}

fn write_rows(rows: &[ReportRow], format: Format, out: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Csv => report::to_csv(rows)?,
        Format::Json => report::to_json(rows)?,
    };
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| p.display().to_string())?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn search(a: &SearchArgs) -> Result<()> {
    let s = &a.scope;
    let extra = cayley_groups(&s.cayley)?;
    let mut sources = Vec::new();
    if search_abelian(s) {
        sources.push(GroupSource::Abelian {
            max_order: s.max_order,
        });
    }
    if !extra.is_empty() {
        sources.push(GroupSource::Explicit(extra));
    }
    let mut rows = Vec::new();
    for &r in &s.r {
        for source in &sources {
            let mut cfg = SearchConfig::new(r, source.clone());
            cfg.max_genus = s.max_gtilde;
            cfg.seed = s.seed;
            cfg.jobs = s.jobs;
            cfg.equivalence = equivalence(s.equivalence);
            rows.extend(run_search(&cfg)?);
        }
    }
    sort_rows(&mut rows);
    let incomplete = rows.iter().filter(|r| !r.orbit_complete).count();
    if incomplete > 0 {
        eprintln!("warning: {incomplete} rows come from orbits cut off at the size cap");
    }
    write_rows(&rows, a.format, a.out.as_deref())
}

pub fn table(a: &TableArgs) -> Result<()> {
    let s = &a.scope;
    let reference = match &a.reference {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| p.display().to_string())?;
            parse_reference(&text).with_context(|| p.display().to_string())?
        }
        None => reference_rows(),
    };
    let scope = TableScope {
        r_values: s.r.clone(),
        abelian: search_abelian(s),
        max_g_tilde: s.max_gtilde,
        max_order: s.max_order,
        extra_groups: cayley_groups(&s.cayley)?,
        seed: s.seed,
        jobs: s.jobs,
        equivalence: equivalence(s.equivalence),
        ..TableScope::abelian(Vec::new(), None)
    };
    let (rows, diff) = reproduce_table(&scope, &reference)?;
    if let Some(out) = &a.out {
        write_rows(&rows, a.format, Some(out))?;
    }
    print!("{}", diff.summary());
    Ok(())
}

pub fn dump(a: &DumpArgs) -> Result<()> {
    let d = load(&a.datum)?;
    let cover = CoverMatrix::from_datum(&d)?;
    let value = match (a.what, cover) {
        (DumpWhat::Eigendims, Some(c)) => {
            let rows: Vec<serde_json::Value> = eigen_dims(&c)?
                .into_iter()
                .map(|(n, dim)| serde_json::json!({ "n": n, "d": dim, "odd": c.is_odd(&n) }))
                .collect();
            serde_json::Value::Array(rows)
        }
        (DumpWhat::Eigendims, None) => {
            let v = hodge_decomposition(&d)?;
            let rows: Vec<serde_json::Value> = (0..v.mult.len())
                .map(|i| {
                    serde_json::json!({
                        "character": i + 1,
                        "degree": v.table.characters[i].degree,
                        "multiplicity": v.mult[i],
                        "sigma": v.sigma_sign[i],
                    })
                })
                .collect();
            serde_json::Value::Array(rows)
        }
        (DumpWhat::Basis, Some(c)) => serde_json::to_value(anti_invariant_basis(&c)?)?,
        (DumpWhat::Products, Some(c)) => {
            let system = build_product_system(&c)?;
            let sample = to_rationals(&sample_points(c.r(), 1, 1)[0]);
            system.to_json(Some(&sample))?
        }
        (_, None) => bail!("basis and products need an abelian group given by a matrix"),
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}
