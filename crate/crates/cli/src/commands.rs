use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use serde_json::{json, Value};

use hhss::center::{
    center_of_truncated_complex_category, dg_center_complex, graded_center, graded_center_with_automorphism,
    CenterAlgebra, CenterElement,
};
use hhss::corpus::{builtin, ingest_path, Input};
use hhss::dgcat::{DGCategory, GradedFunctor};
use hhss::hochschild::{graded_hochschild, Bicomplex, BimoduleAction, HHResult, Stability};
use hhss::linalg::SVec;
use hhss::specseq::{
    characteristic_hom, convergence_check, degeneration_report, forgetful_edge, induced_functor, pages,
    EdgeMapResult, Filtration, HochschildSS,
};
use hhss::{Error, Field, Result};

use crate::args::{Common, Format};
use crate::render;

/// Sign and indexing conventions, repeated in every JSON document.
pub const CONVENTION: &str = "internal degrees homological (n), t = -n; total degree N = s + t; \
d_tot = delta + (-1)^s D; normalized cochains drop identity arguments";

/// Upper limit on a certificate-derived arity.
const AUTO_SMAX_CAP: usize = 12;

/// Wide enough to show the columns `s ≤ 4` of the exterior examples.
const SS_DEFAULT_DEGREES: (i64, i64) = (-8, 4);

pub struct Context {
    pub input: Input,
    pub field: Field,
    pub automorphism: Option<(String, GradedFunctor)>,
    pub normalized: bool,
}

fn looks_like_path(s: &str) -> bool {
    s.ends_with(".toml") || s.contains('/') || Path::new(s).is_file()
}

pub fn load(c: &Common) -> Result<Context> {
    let field = c.field()?;
    let input = if looks_like_path(&c.input) {
        ingest_path(Path::new(&c.input), field)?
    } else {
        builtin(&c.input, field.unwrap_or(Field::Rationals))?
    };
    let automorphism = resolve_automorphism(&input, &c.automorphism, field)?;
    Ok(Context {
        field: input.category.field(),
        input,
        automorphism,
        normalized: c.normalized(),
    })
}

fn resolve_automorphism(input: &Input, spec: &str, field: Option<Field>) -> Result<Option<(String, GradedFunctor)>> {
    let a = &input.category;
    match spec {
        "none" => Ok(None),
        "parity" => Ok(Some(("parity".into(), GradedFunctor::parity(a)))),
        _ => {
            let (functors, wanted) = if let Some(rest) = spec.strip_prefix("file:") {
                let (path, name) = match rest.split_once('#') {
                    Some((p, n)) => (p, Some(n)),
                    None => (rest, None),
                };
                let other = ingest_path(Path::new(path), field.or(Some(a.field())))?;
                if other.category != *a {
                    return Err(Error::validation(
                        "automorphism file describes the input category",
                        path.to_string(),
                    ));
                }
                (other.functors, name.map(str::to_string))
            } else {
                (input.functors.clone(), Some(spec.to_string()))
            };
            let (name, t) = match wanted {
                Some(n) => {
                    let t = functors
                        .get(&n)
                        .cloned()
                        .ok_or_else(|| Error::Parse(format!("no functor named `{n}`")))?;
                    (n, t)
                }
                None if functors.len() == 1 => functors.into_iter().next().expect("one functor"),
                None => return Err(Error::Parse("the file must hold exactly one functor, or name one with #".into())),
            };
            // Graded automorphisms anticommute with d; on graded inputs this
            // is the plain functor condition.
            if let Some(v) = t.validate_signed(a, a, -1) {
                return Err(Error::validation(v.axiom, v.witness));
            }
            t.inverse(a)?;
            Ok(Some((name, t)))
        }
    }
}

impl Context {
    fn category(&self) -> &DGCategory {
        &self.input.category
    }

    fn automorphism_name(&self) -> &str {
        self.automorphism.as_ref().map_or("none", |(n, _)| n.as_str())
    }

    /// The bicomplex for total degrees `degrees`, restricted to the
    /// invariant part when an automorphism is selected.
    pub fn bicomplex(&self, degrees: (i64, i64), smax: Option<usize>) -> Result<Bicomplex> {
        let a = self.category();
        let m = self.input.coefficients();
        let s_max = match smax {
            Some(s) => s,
            None => {
                let probe = Bicomplex::build(a, &m, 0, self.normalized)?;
                match probe.certificate().required_s_max(degrees.0, degrees.1) {
                    Some(s) => s.clamp(1, AUTO_SMAX_CAP),
                    // Unbounded supports: every arity reaches every degree.
                    None => {
                        return Err(Error::WindowTooSmall(format!(
                            "no finite s_max makes degrees {}..{} exact; pass --smax to compute a truncation",
                            degrees.0, degrees.1
                        )))
                    }
                }
            }
        };
        let b = Bicomplex::build(a, &m, s_max, self.normalized)?;
        match &self.automorphism {
            None => Ok(b),
            Some((_, t)) => {
                if self.input.bimodule.is_some() {
                    return Err(Error::Unsupported(
                        "automorphisms act only on the standard coefficients".into(),
                    ));
                }
                b.invariant(a, &m, t, &BimoduleAction::from_functor(t))
            }
        }
    }

    fn provenance(&self, command: &str, extra: Value) -> Value {
        let mut p = json!({
            "tool": "hhss",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "input": self.input.name,
            "field": self.field.to_string(),
            "normalized": self.normalized,
            "automorphism": self.automorphism_name(),
            "convention": CONVENTION,
        });
        if let (Value::Object(p), Value::Object(e)) = (&mut p, extra) {
            p.extend(e);
        }
        if let Some(n) = &self.input.note {
            p["note"] = json!(n);
        }
        p
    }

    fn header(&self, command: &str, rest: &str) -> String {
        let norm = if self.normalized { "normalized" } else { "full" };
        let mut h = format!("# {command} {} over {}, {norm}", self.input.name, self.field);
        if self.automorphism.is_some() {
            let _ = write!(h, ", automorphism {}", self.automorphism_name());
        }
        if !rest.is_empty() {
            let _ = write!(h, ", {rest}");
        }
        h.push('\n');
        if let Some(n) = &self.input.note {
            let _ = writeln!(h, "# {n}");
        }
        h
    }
}

fn stability_name(s: Stability) -> &'static str {
    match s {
        Stability::Exact => "exact",
        Stability::Truncated => "truncated",
    }
}

fn require_exact(b: &Bicomplex, degrees: (i64, i64)) -> Result<()> {
    if (degrees.0..=degrees.1).all(|n| b.stability(n) == Stability::Truncated) {
        let need = b
            .certificate()
            .required_s_max(degrees.0, degrees.1)
            .map_or("no finite s_max suffices".to_string(), |s| format!("need s_max ≥ {s}"));
        return Err(Error::WindowTooSmall(format!(
            "no total degree in {}..{} is exact with s_max = {} ({need})",
            degrees.0,
            degrees.1,
            b.s_max()
        )));
    }
    Ok(())
}

fn terms_json(b: &Bicomplex, hh: &HHResult, n: i64, v: &[hhss::Scalar]) -> Value {
    let f = b.field();
    let gens = hh.total.generators(n);
    let terms: Vec<Value> = gens
        .iter()
        .zip(v)
        .filter(|(_, c)| f.format_scalar(c) != "0")
        .map(|(&(s, j), c)| json!([s, b.column(s)[j].label, f.format_scalar(c)]))
        .collect();
    Value::Array(terms)
}

pub fn hh(c: &Common) -> Result<String> {
    let ctx = load(c)?;
    let degrees = c.degrees()?.unwrap_or((0, 5));
    let b = ctx.bicomplex(degrees, c.smax)?;
    require_exact(&b, degrees)?;
    let hh = b.hochschild_cohomology(degrees.0, degrees.1)?;
    let rows: Vec<Vec<String>> = hh
        .degrees
        .iter()
        .map(|d| vec![d.degree.to_string(), d.dim.to_string(), stability_name(d.stability).to_string()])
        .collect();
    Ok(match c.format {
        Format::Ascii => {
            ctx.header("hh", &format!("s_max {}", b.s_max())) + &render::table(&["degree", "dim", "stability"], &rows)
        }
        Format::Tsv => render::tsv(&["degree", "dim", "stability"], &rows),
        Format::Json => {
            let degs: Vec<Value> = hh
                .degrees
                .iter()
                .map(|d| {
                    json!({
                        "degree": d.degree,
                        "dim": d.dim,
                        "stability": stability_name(d.stability),
                        "representatives": d.representatives.iter().map(|v| terms_json(&b, &hh, d.degree, v)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "provenance": ctx.provenance("hh", json!({"s_max": b.s_max(), "degrees": [degrees.0, degrees.1]})),
                "degrees": degs,
            });
            to_json(&doc)
        }
    })
}

pub fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn axis_names(f: Filtration) -> (&'static str, &'static str) {
    match f {
        Filtration::Characteristic => ("s", "t"),
        Filtration::Forgetful => ("t", "s"),
    }
}

/// The spectral sequence for the command-line window.
pub fn spectral_sequence(ctx: &Context, c: &Common, default: (i64, i64)) -> Result<(Bicomplex, HochschildSS)> {
    let filtration = Filtration::parse(&c.filtration)?;
    let degrees = c.degrees()?.unwrap_or(default);
    let b = ctx.bicomplex(degrees, c.smax)?;
    require_exact(&b, degrees)?;
    let ss = pages(&b, filtration, degrees, c.page.max(2))?;
    Ok((b, ss))
}

pub fn ss(c: &Common) -> Result<String> {
    let ctx = load(c)?;
    let (b, ss) = spectral_sequence(&ctx, c, SS_DEFAULT_DEGREES)?;
    let trange = c.trange()?;
    let (xa, ya) = axis_names(ss.filtration);
    let r = c.page;
    let r_eff = r.min(ss.sequence.pages.len() - 1);
    let page = ss.sequence.page(r_eff);
    let in_rows = |y: i64| trange.is_none_or(|(lo, hi)| lo <= y && y <= hi);
    let cells: BTreeMap<(i64, i64), usize> = ss.chart(r).into_iter().filter(|((_, y), _)| in_rows(*y)).collect();
    let mut diffs = Vec::new();
    for (&(p, n), m) in &page.differentials {
        if n < ss.degrees.0 || n > ss.degrees.1 || m.is_zero() {
            continue;
        }
        let ri = r_eff as i64;
        diffs.push((ss.filtration.coordinates(p, n), ss.filtration.coordinates(p + ri, n + 1), m.rank()));
    }
    let deg = degeneration_report(&ss);
    let hh = b.hochschild_cohomology(ss.degrees.0, ss.degrees.1)?;
    let conv = convergence_check(&ss, &hh);
    let filt_name = match ss.filtration {
        Filtration::Characteristic => "characteristic",
        Filtration::Forgetful => "forgetful",
    };
    Ok(match c.format {
        Format::Ascii => {
            let mut out = ctx.header(
                "ss",
                &format!(
                    "{filt_name} filtration, page {r}, s_max {}, degrees {}..{}",
                    b.s_max(),
                    ss.degrees.0,
                    ss.degrees.1
                ),
            );
            if c.chart {
                let xs = cells.keys().map(|k| k.0).chain([0]);
                let ys = cells.keys().map(|k| k.1).chain([0]);
                let cols = (xs.clone().min().unwrap(), xs.max().unwrap());
                let rows = trange.unwrap_or((ys.clone().min().unwrap(), ys.max().unwrap()));
                let (h, v) = match ss.filtration {
                    Filtration::Characteristic => ("t−s", "s"),
                    Filtration::Forgetful => ("p", "q"),
                };
                out.push_str(&render::chart(&cells, cols, rows, h, v));
                let _ = writeln!(out, "columns: {xa}, rows: {ya}");
            } else {
                let mut rows: Vec<Vec<String>> = cells
                    .iter()
                    .map(|(&(x, y), d)| vec![x.to_string(), y.to_string(), (x + y).to_string(), d.to_string()])
                    .collect();
                rows.sort_by_key(|r| (r[2].parse::<i64>().unwrap(), r[0].parse::<i64>().unwrap()));
                let _ = writeln!(out, "E_{r} nonzero cells");
                out.push_str(&render::table(&[xa, ya, "N", "dim"], &rows));
            }
            if diffs.is_empty() {
                let _ = writeln!(out, "d_{r_eff}: zero on degrees {}..{}", ss.degrees.0, ss.degrees.1);
            }
            for (src, dst, rank) in &diffs {
                let _ = writeln!(out, "d_{r_eff}: {src:?} -> {dst:?} rank {rank}");
            }
            match &deg.first {
                None => {
                    let _ = writeln!(out, "degenerate: all d_r, r ≥ 2, vanish on degrees {}..{}", deg.window.0, deg.window.1);
                }
                Some(w) => {
                    let _ = writeln!(
                        out,
                        "nonzero d_{}: {:?} -> {:?} rank {}",
                        w.r, w.source, w.target, w.rank
                    );
                }
            }
            if conv.ok() {
                let _ = writeln!(out, "convergence: diagonal sums of E_∞ match HH on exact degrees");
            } else {
                for m in conv.mismatches() {
                    let _ = writeln!(out, "convergence MISMATCH in degree {}: E_∞ {} vs HH {}", m.degree, m.diagonal, m.hh);
                }
            }
            out
        }
        Format::Tsv => {
            let rows: Vec<Vec<String>> = cells
                .iter()
                .map(|(&(x, y), d)| vec![r.to_string(), x.to_string(), y.to_string(), d.to_string()])
                .collect();
            render::tsv(&["page", xa, ya, "dim"], &rows)
        }
        Format::Json => {
            let pages: Vec<Value> = (0..=r_eff)
                .map(|k| {
                    let cells: Vec<Value> = ss
                        .chart(k)
                        .into_iter()
                        .map(|((x, y), d)| {
                            json!({"x": x, "y": y, "N": x + y, "dim": d, "d_rank": ss.sequence.page(k).rank(x, x + y)})
                        })
                        .collect();
                    json!({"r": k, "cells": cells})
                })
                .collect();
            let doc = json!({
                "provenance": ctx.provenance("ss", json!({
                    "s_max": b.s_max(),
                    "degrees": [ss.degrees.0, ss.degrees.1],
                    "filtration": filt_name,
                    "page": r,
                    "axes": [xa, ya],
                })),
                "pages": pages,
                "degeneration": deg,
                "convergence": conv,
            });
            to_json(&doc)
        }
    })
}

fn element_text(c: &DGCategory, e: &CenterElement) -> String {
    let f = c.field();
    let parts: Vec<String> = e
        .components
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty())
        .map(|(x, v)| format!("{}: {}", c.objects()[x], vector_text(c, x, v, f)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

fn vector_text(c: &DGCategory, x: usize, v: &SVec, f: Field) -> String {
    v.iter()
        .map(|(&k, coef)| format!("{}·{}", f.format_scalar(coef), c.hom(x, x).label(k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn center(c: &Common) -> Result<String> {
    let ctx = load(c)?;
    let a = ctx.category();
    let window = c.degrees()?.or(c.trange()?).unwrap_or((-3, 3));
    let kind = c.kind.clone().unwrap_or_else(|| "auto".into());
    let kind = match kind.as_str() {
        "auto" if a.is_graded() => "graded".to_string(),
        // Categories with contractible objects have no homology category.
        "auto" if a.homology_category().is_err() => "cycles".to_string(),
        "auto" => "homology".to_string(),
        k => k.to_string(),
    };
    let (z, host): (CenterAlgebra, DGCategory) = match kind.as_str() {
        "graded" => {
            let z = match &ctx.automorphism {
                None => graded_center(a, window),
                Some((_, t)) => graded_center_with_automorphism(a, t, window)?,
            };
            (z, a.clone())
        }
        "homology" => {
            let h = a.homology_category()?;
            let z = match &ctx.automorphism {
                None => graded_center(&h.category, window),
                Some((_, t)) => graded_center_with_automorphism(&h.category, &induced_functor(a, &h, t)?, window)?,
            };
            (z, h.category)
        }
        "cycles" => {
            if ctx.automorphism.is_some() {
                return Err(Error::Unsupported("the cycle-category center is computed without automorphism".into()));
            }
            let z = a.cycle_category()?.category;
            (graded_center(&z, window), z)
        }
        "dg" => {
            let zc = dg_center_complex(a, window)?;
            let rows: Vec<Vec<String>> = (window.0..=window.1)
                .map(|t| vec![t.to_string(), zc.algebra.dim(t).to_string(), zc.cohomology_dim(t).to_string()])
                .collect();
            return Ok(match c.format {
                Format::Ascii => ctx.header("center", "dg center") + &render::table(&["t", "Z^t", "H^t(Z)"], &rows),
                Format::Tsv => render::tsv(&["t", "dim", "cohomology"], &rows),
                Format::Json => to_json(&json!({
                    "provenance": ctx.provenance("center", json!({"kind": "dg", "window": [window.0, window.1]})),
                    "degrees": rows.iter().map(|r| json!({"t": r[0].parse::<i64>().unwrap(), "dim": r[1].parse::<usize>().unwrap(), "cohomology": r[2].parse::<usize>().unwrap()})).collect::<Vec<_>>(),
                })),
            });
        }
        "truncated" => {
            let (m, n) = c.trange()?.unwrap_or((0, 2));
            let (cycles, z) = center_of_truncated_complex_category(a, m, n)?;
            (z, cycles)
        }
        k => return Err(Error::Parse(format!("unknown center kind `{k}`"))),
    };
    let (lo, hi) = z.window;
    let rows: Vec<Vec<String>> = (lo..=hi).map(|t| vec![t.to_string(), z.dim(t).to_string()]).collect();
    let commutative = z.is_graded_commutative(&host);
    Ok(match c.format {
        Format::Ascii => {
            let mut out = ctx.header("center", &format!("{kind}, window {lo}..{hi}"));
            if let Some(cav) = &z.caveat {
                let _ = writeln!(out, "# {cav}");
            }
            out.push_str(&render::table(&["t", "dim"], &rows));
            for (t, basis) in &z.basis {
                for (i, e) in basis.iter().enumerate() {
                    let _ = writeln!(out, "Z^{t}[{i}] = {}", element_text(&host, e));
                }
            }
            let _ = writeln!(out, "graded commutative: {commutative}");
            out
        }
        Format::Tsv => render::tsv(&["t", "dim"], &rows),
        Format::Json => {
            let degs: Vec<Value> = z
                .basis
                .iter()
                .map(|(t, basis)| {
                    json!({
                        "t": t,
                        "dim": basis.len(),
                        "basis": basis.iter().map(|e| element_text(&host, e)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            to_json(&json!({
                "provenance": ctx.provenance("center", json!({"kind": kind, "window": [lo, hi], "caveat": z.caveat})),
                "degrees": degs,
                "graded_commutative": commutative,
            }))
        }
    })
}

fn edge_json(e: &EdgeMapResult, f: Field) -> Value {
    let matrix: Vec<Vec<String>> = (0..e.matrix.rows())
        .map(|i| e.matrix.row(i).iter().map(|x| f.format_scalar(x)).collect())
        .collect();
    json!({
        "degree": e.degree,
        "source": e.source,
        "target": e.target,
        "source_dim": e.source_dim,
        "target_dim": e.target_dim,
        "matrix": matrix,
        "rank": e.rank,
        "kernel_dim": e.kernel_dim(),
        "surjective": e.surjective,
        "injective": e.injective,
        "stability": stability_name(e.stability),
        "e_infinity": e.e_infinity,
    })
}

pub fn edge_map(ctx: &Context, c: &Common) -> Result<EdgeMapResult> {
    let a = ctx.category();
    let degree = c.degree.unwrap_or(0);
    let kind = c.kind.as_deref().unwrap_or("characteristic");
    let filtration = match kind {
        "characteristic" | "char" => Filtration::Characteristic,
        "forgetful" | "forget" => Filtration::Forgetful,
        k => return Err(Error::Parse(format!("unknown edge kind `{k}`"))),
    };
    if ctx.input.bimodule.is_some() {
        return Err(Error::Unsupported("edge maps need the standard coefficients".into()));
    }
    let b = ctx.bicomplex((degree, degree), c.smax)?;
    require_exact(&b, (degree, degree))?;
    let ss = pages(&b, filtration, (degree, degree), 2)?;
    match filtration {
        Filtration::Characteristic => {
            characteristic_hom(a, &b, ctx.automorphism.as_ref().map(|(_, t)| t), degree, Some(&ss))
        }
        Filtration::Forgetful => {
            if ctx.automorphism.is_some() {
                return Err(Error::Unsupported("the forgetful edge is computed without automorphism".into()));
            }
            forgetful_edge(a, &b, degree, Some(&ss))
        }
    }
}

pub fn edge(c: &Common) -> Result<String> {
    let ctx = load(c)?;
    let e = edge_map(&ctx, c)?;
    let f = ctx.field;
    Ok(match c.format {
        Format::Ascii => {
            let mut out = ctx.header("edge", &format!("{} -> {}", e.source, e.target));
            let _ = writeln!(out, "dimensions: {} -> {}", e.source_dim, e.target_dim);
            for i in 0..e.matrix.rows() {
                let row: Vec<String> = e.matrix.row(i).iter().map(|x| f.format_scalar(x)).collect();
                let _ = writeln!(out, "  [{}]", row.join(" "));
            }
            let _ = writeln!(out, "rank: {}", e.rank);
            let _ = writeln!(out, "kernel: {}", e.kernel_dim());
            let _ = writeln!(out, "surjective: {}", e.surjective);
            let _ = writeln!(out, "injective: {}", e.injective);
            let _ = writeln!(out, "stability: {}", stability_name(e.stability));
            if let Some(m) = e.matches_e_infinity() {
                let _ = writeln!(out, "image matches E_∞: {m}");
            }
            out
        }
        Format::Tsv => {
            let rows = vec![vec![
                e.degree.to_string(),
                e.source_dim.to_string(),
                e.target_dim.to_string(),
                e.rank.to_string(),
                e.surjective.to_string(),
                e.injective.to_string(),
            ]];
            render::tsv(&["degree", "source_dim", "target_dim", "rank", "surjective", "injective"], &rows)
        }
        Format::Json => to_json(&json!({
            "provenance": ctx.provenance("edge", json!({"kind": c.kind.as_deref().unwrap_or("characteristic")})),
            "edge": edge_json(&e, f),
        })),
    })
}

/// One verification outcome: `None` passes, `Some(reason)` fails.
struct Check {
    name: String,
    failure: Option<String>,
    skipped: bool,
}

fn check(name: &str, ok: bool, why: impl FnOnce() -> String) -> Check {
    Check {
        name: name.to_string(),
        failure: (!ok).then(why),
        skipped: false,
    }
}

fn skip(name: &str, why: String) -> Check {
    Check {
        name: name.to_string(),
        failure: Some(why),
        skipped: true,
    }
}

/// Differentials, convergence and parity invariance on the certified part
/// of `degrees`; skipped when no degree can be certified.
fn hochschild_checks(ctx: &Context, c: &Common, degrees: (i64, i64)) -> Result<Vec<Check>> {
    let a = ctx.category();
    let mut checks = Vec::new();
    let b = match ctx.bicomplex(degrees, c.smax) {
        Ok(b) => b,
        Err(Error::WindowTooSmall(w)) => return Ok(vec![skip("Hochschild checks", w)]),
        Err(e) => return Err(e),
    };
    let exact: Vec<i64> = (degrees.0..=degrees.1).filter(|&n| b.stability(n) == Stability::Exact).collect();
    let d2 = b.check();
    checks.push(check("d_hoch² = 0, d_int² = 0, commuting squares", d2.is_ok(), || format!("{d2:?}")));
    if exact.is_empty() {
        checks.push(skip("Hochschild checks", format!("no exact degree in {}..{} with s_max {}", degrees.0, degrees.1, b.s_max())));
    } else {
        let (lo, hi) = (*exact.first().unwrap(), *exact.last().unwrap());
        let hh = b.hochschild_cohomology(lo, hi)?;
        checks.push(check("d_tot² = 0", hh.total.check(), String::new));
        for filt in [Filtration::Characteristic, Filtration::Forgetful] {
            let ss = pages(&b, filt, (lo, hi), 2)?;
            let conv = convergence_check(&ss, &hh);
            checks.push(check(&format!("{} convergence", format!("{filt:?}").to_lowercase()), conv.ok(), || {
                format!("{:?}", conv.mismatches().iter().map(|r| r.degree).collect::<Vec<_>>())
            }));
        }
        if ctx.automorphism.is_none() && ctx.input.bimodule.is_none() {
            let alt = Context {
                input: ctx.input.clone(),
                field: ctx.field,
                automorphism: Some(("parity".into(), GradedFunctor::parity(a))),
                normalized: ctx.normalized,
            };
            let bp = alt.bicomplex(degrees, Some(b.s_max()))?;
            let hp = bp.hochschild_cohomology(lo, hi)?;
            let same = hh.degrees.iter().zip(&hp.degrees).all(|(x, y)| x.dim == y.dim);
            checks.push(check("parity invariance of HH", same, String::new));
        }
    }
    Ok(checks)
}

/// Every invariant check on the input. Returns the report and whether all passed.
pub fn verify(c: &Common) -> Result<(String, bool)> {
    let ctx = load(c)?;
    let a = ctx.category();
    let mut checks = Vec::new();
    let v = a.validate();
    checks.push(check("category axioms", v.is_ok(), || format!("{:?}", v.violation)));
    for (name, t) in &ctx.input.functors {
        let viol = t.validate(a, a);
        checks.push(check(&format!("functor {name}"), viol.is_none(), || format!("{viol:?}")));
    }
    let m = ctx.input.coefficients();
    let viol = m.validate(a);
    checks.push(check("bimodule axioms", viol.is_none(), || format!("{viol:?}")));
    let degrees = c.degrees()?.unwrap_or((0, 3));
    checks.extend(hochschild_checks(&ctx, c, degrees)?);
    if a.is_graded() && ctx.input.bimodule.is_none() && ctx.automorphism.is_none() {
        let window = c.trange()?.unwrap_or((-3, 3));
        let z = graded_center(a, window);
        checks.push(check("graded commutativity of the center", z.is_graded_commutative(a), String::new));
        let zp = graded_center_with_automorphism(a, &GradedFunctor::parity(a), window)?;
        let same = (window.0..=window.1).all(|t| z.dim(t) == zp.dim(t));
        checks.push(check("parity invariance of the center", same, String::new));
        let bg = Bicomplex::build(a, &m, 1, ctx.normalized)?;
        let g = graded_hochschild(&bg, 0)?;
        let bad: Vec<i64> = (window.0..=window.1).filter(|&t| g.dim(0, t) != z.dim(t)).collect();
        checks.push(check("HH⁰_gr(C; Σ^t C) = Z^t", bad.is_empty(), || format!("{bad:?}")));
    }
    let mut out = ctx.header("verify", "");
    let mut all = true;
    for ch in &checks {
        let status = match (&ch.failure, ch.skipped) {
            (None, _) => "PASS",
            (Some(_), true) => "SKIP",
            (Some(_), false) => {
                all = false;
                "FAIL"
            }
        };
        let _ = write!(out, "{status}  {}", ch.name);
        if let Some(w) = &ch.failure {
            if !w.is_empty() {
                let _ = write!(out, ": {w}");
            }
        }
        out.push('\n');
    }
    Ok((out, all))
}
