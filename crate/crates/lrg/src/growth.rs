//! Growth-rate and lower-bound arithmetic, plus catalog table reports.
//!
//! A verified `(k_1, ..., k_r; m)`-graph gives `R(k_1, ..., k_r) >= m + 1`.
//! Its growth factor `(2m-1)^(1/r)` summarises its strength for building
//! series of graphs one colour at a time. Compounding a `q`-colour first
//! prototype of order `m` repeatedly multiplies the order by `m-1` while
//! adding `q-1` colours, so the per-colour growth of such a series converges
//! to `(m-1)^(1/(q-1))`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::clique::{verify, BoundsVector, Method};
use crate::colouring::LinearColouring;
use crate::compound::{build, restricted_verify, CompoundRecipe, Provenance};
use crate::{Error, Result};

/// Growth factor `(2m-1)^(1/r)` of an order-`m`, `r`-colour graph.
pub fn growth_factor(m: u32, r: u32) -> Result<f64> {
    if m < 2 || r < 1 {
        return Err(Error::ArgumentRange(format!(
            "growth factor needs m >= 2 and r >= 1, got m={m} r={r}"
        )));
    }
    Ok((2.0 * m as f64 - 1.0).powf(1.0 / r as f64))
}

/// Limiting growth rate `(m-1)^(1/(q-1))` of the series obtained by
/// compounding a `q`-colour order-`m` first prototype with itself repeatedly:
/// each factor `m-1` in the order costs `q-1` net colours.
pub fn limiting_growth_rate(m: u32, q: u32) -> Result<f64> {
    if m < 2 || q < 2 {
        return Err(Error::ArgumentRange(format!(
            "limiting growth rate needs m >= 2 and q >= 2, got m={m} q={q}"
        )));
    }
    Ok((m as f64 - 1.0).powf(1.0 / (q as f64 - 1.0)))
}

/// Rate form of the square relation between triangle series and `k = 5`
/// series: a limiting growth rate `gamma3` for 3-bounded graphs yields
/// `gamma3^2` for 5-bounded graphs.
pub fn abbott_r5(gamma3: f64) -> Result<f64> {
    if !(gamma3 > 0.0) {
        return Err(Error::ArgumentRange(format!(
            "rate must be positive, got {gamma3}"
        )));
    }
    Ok(gamma3 * gamma3)
}

/// Order form: from `R_r(3) >= r3` follows `R_r(5) >= (r3 - 1)^2 + 1`.
pub fn abbott_r5_order(r3: u64) -> Result<u64> {
    if r3 < 1 {
        return Err(Error::ArgumentRange("bound must be positive".into()));
    }
    Ok((r3 - 1) * (r3 - 1) + 1)
}

/// The Ramsey lower bound witnessed by a verified graph of this order.
pub fn lower_bound(order: u64) -> u64 {
    order + 1
}

/// One catalog file: `<k-signature>-<order>[-variant].lrg`, signature parts
/// joined by `_` in colour order.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub path: PathBuf,
    pub bounds: BoundsVector,
    pub order: u32,
    pub variant: Option<String>,
    pub colouring: LinearColouring,
}

/// A row of the catalog report.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub file: String,
    /// Signature sorted ascending, the conventional display form.
    pub signature: Vec<u32>,
    pub order: u32,
    pub bound: u64,
    pub growth: f64,
    pub ok: bool,
    pub method: Method,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    /// Files that could not even be read or parsed, with the reason.
    pub flagged: Vec<(String, String)>,
}

impl TableReport {
    pub fn all_ok(&self) -> bool {
        self.flagged.is_empty() && self.rows.iter().all(|r| r.ok)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:<28} {:>12} {:>6} {:>10} {:>9} {:>11} ok", "file", "signature", "order", "bound", "growth", "method").unwrap();
        for r in &self.rows {
            let sig: Vec<String> = r.signature.iter().map(|k| k.to_string()).collect();
            writeln!(
                out,
                "{:<28} {:>12} {:>6} {:>10} {:>9.4} {:>11} {}",
                r.file,
                format!("({})", sig.join(",")),
                r.order,
                format!("R>={}", r.bound),
                r.growth,
                r.method.to_string(),
                if r.ok { "ok" } else { "FAIL" }
            )
            .unwrap();
            if let Some(n) = &r.note {
                writeln!(out, "    note: {n}").unwrap();
            }
        }
        for (f, reason) in &self.flagged {
            writeln!(out, "{f:<28} FLAGGED: {reason}").unwrap();
        }
        out
    }

    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let sig: Vec<String> = r.signature.iter().map(|k| k.to_string()).collect();
            writeln!(
                out,
                "file={} signature={} order={} bound={} growth={:.4} method={} ok={}",
                r.file,
                sig.join(","),
                r.order,
                r.bound,
                r.growth,
                r.method,
                r.ok
            )
            .unwrap();
        }
        for (f, reason) in &self.flagged {
            writeln!(out, "file={f} flagged={reason:?}").unwrap();
        }
        out
    }
}

/// Parses `<k-signature>-<order>[-variant].lrg` into bounds and order.
pub fn parse_catalog_name(name: &str) -> Result<(BoundsVector, u32, Option<String>)> {
    let stem = name.strip_suffix(".lrg").ok_or_else(|| {
        Error::ArgumentRange(format!("catalog file `{name}` must end in .lrg"))
    })?;
    let mut parts = stem.split('-');
    let sig = parts
        .next()
        .ok_or_else(|| Error::ArgumentRange(format!("catalog file `{name}` has no signature")))?;
    let bounds: Vec<u32> = sig
        .split('_')
        .map(|k| {
            k.parse()
                .map_err(|_| Error::ArgumentRange(format!("bad signature part `{k}` in `{name}`")))
        })
        .collect::<Result<_>>()?;
    let order: u32 = parts
        .next()
        .ok_or_else(|| Error::ArgumentRange(format!("catalog file `{name}` has no order")))?
        .parse()
        .map_err(|_| Error::ArgumentRange(format!("bad order in `{name}`")))?;
    let rest: Vec<&str> = parts.collect();
    let variant = if rest.is_empty() {
        None
    } else {
        Some(rest.join("-"))
    };
    Ok((BoundsVector::new(bounds)?, order, variant))
}

/// Reads and checks every `.lrg` file in a catalog directory, producing the
/// table of (signature, order, bound, growth factor) rows sorted by
/// signature. Files that fail to parse or verify are flagged, never silently
/// included. A `<file>.prov` side-record switches the check to restricted
/// verification, rebuilding the compound from the recorded inputs.
pub fn catalog_report(dir: &Path) -> Result<TableReport> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "lrg"))
        .collect();
    names.sort();

    let mut rows = Vec::new();
    let mut flagged = Vec::new();
    for path in names {
        let file = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        match catalog_row(&path, &file) {
            Ok(row) => rows.push(row),
            Err(e) => flagged.push((file, e.to_string())),
        }
    }
    rows.sort_by(|a, b| {
        a.signature
            .cmp(&b.signature)
            .then(a.order.cmp(&b.order))
            .then(a.file.cmp(&b.file))
    });
    Ok(TableReport { rows, flagged })
}

fn catalog_row(path: &Path, file: &str) -> Result<TableRow> {
    let (bounds, order, _variant) = parse_catalog_name(file)?;
    let text = std::fs::read_to_string(path)?;
    let col = LinearColouring::parse(&text)?;
    if col.order() != order {
        return Err(Error::ArgumentRange(format!(
            "file names order {order} but contains order {}",
            col.order()
        )));
    }
    if col.colour_count() as usize != bounds.len() {
        return Err(Error::BoundsArity {
            expected: col.colour_count() as usize,
            got: bounds.len(),
        });
    }

    let prov_path = path.with_extension("lrg.prov");
    let (ok, method, note) = if prov_path.exists() {
        let prov = Provenance::parse(&std::fs::read_to_string(&prov_path)?)?;
        let report = reverify_restricted(path, &prov, &col, &bounds)?;
        (report.pass, Method::Restricted, None)
    } else {
        let report = verify(&col, &bounds)?;
        (report.pass, Method::Full, None)
    };

    Ok(TableRow {
        file: file.to_string(),
        signature: bounds.sorted(),
        order,
        bound: lower_bound(order as u64),
        growth: growth_factor(order, bounds.len() as u32)?,
        ok,
        method,
        note,
    })
}

/// Rebuilds a compound from its provenance record (input paths resolved
/// relative to the record) and runs restricted verification. The rebuilt
/// colouring must match the catalog file exactly.
pub fn reverify_restricted(
    file: &Path,
    prov: &Provenance,
    col: &LinearColouring,
    bounds: &BoundsVector,
) -> Result<crate::clique::VerificationReport> {
    let base = file.parent().unwrap_or_else(|| Path::new("."));
    let resolve = |p: &str| {
        let candidate = PathBuf::from(p);
        if candidate.is_absolute() {
            candidate
        } else {
            base.join(candidate)
        }
    };
    let u = LinearColouring::parse(&std::fs::read_to_string(resolve(&prov.input_u))?)?;
    let v = LinearColouring::parse(&std::fs::read_to_string(resolve(&prov.input_v))?)?;
    if u.content_hash() != prov.input_u_sha256 {
        return Err(Error::InvalidProvenance(
            "first prototype does not match its recorded hash".into(),
        ));
    }
    if v.content_hash() != prov.input_v_sha256 {
        return Err(Error::InvalidProvenance(
            "second prototype does not match its recorded hash".into(),
        ));
    }
    let q = u.colour_count() as usize;
    if bounds.len() != q - 1 + v.colour_count() as usize {
        return Err(Error::BoundsArity {
            expected: q - 1 + v.colour_count() as usize,
            got: bounds.len(),
        });
    }
    let mut u_bounds = bounds.as_slice()[..q - 1].to_vec();
    u_bounds.push(3);
    let v_bounds = BoundsVector::new(bounds.as_slice()[q - 1..].to_vec())?;
    let recipe = CompoundRecipe::new(u, BoundsVector::new(u_bounds)?, q as u32, v, v_bounds)?;
    let result = build(&recipe)?;
    if result.w() != col {
        return Err(Error::InvalidProvenance(
            "rebuilt compound does not match the catalog file".into(),
        ));
    }
    if recipe.q_cap() != prov.q_cap {
        return Err(Error::InvalidProvenance(format!(
            "bounds give Q = {}, provenance records Q = {}",
            recipe.q_cap(),
            prov.q_cap
        )));
    }
    restricted_verify(&result, bounds)
}
