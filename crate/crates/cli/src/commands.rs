use std::fmt::Write as _;

use folcohom::format::{
    load_map, load_model, model_to_toml, parse_theta, render_element, to_document, CohomologyDocument,
    SignatureDocument,
};
use folcohom::lichnerowicz::{cohomology, duality_check, Sign, TwistingForm};
use folcohom::model::metric_homotopy;
use folcohom::morphism::{alvarez_pullback_check, induced_cohomology_map};
use folcohom::scalar::{parse_rational, rat};
use folcohom::signature::basic_signature;
use folcohom::zoo::{self, compute_invariants, Expected};
use folcohom::{Error, FoliatedModel, Result};
use serde::Serialize;

use crate::{Format, MapArgs, ModelArgs, SweepArgs, ThetaArgs, ZooArgs};

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(headers.to_vec());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn sigma_text(s: Option<i64>) -> String {
    s.map_or_else(|| "-".to_string(), |s| s.to_string())
}

fn model(spec: &str) -> Result<FoliatedModel> {
    load_model(spec, None)
}

#[derive(Serialize)]
struct InspectDocument {
    model: String,
    kind: String,
    total_dim: usize,
    leaf_rank: usize,
    codim: usize,
    degree_dims: Vec<usize>,
    basic_dims: Vec<usize>,
    kappa: String,
    kappa_b: String,
    chi: String,
    taut: bool,
}

pub fn inspect(a: &ModelArgs, format: Format) -> Result<String> {
    let m = model(&a.model)?;
    let b = m.basic_subcomplex()?;
    let mc = b.mean_curvature_data()?;
    let doc = InspectDocument {
        model: m.name().to_string(),
        kind: if m.is_frame_model() { "lie" } else { "cdga" }.to_string(),
        total_dim: m.total_dim(),
        leaf_rank: m.leaf_rank(),
        codim: m.codim(),
        degree_dims: (0..=m.total_dim()).map(|k| m.degree_dim(k)).collect(),
        basic_dims: b.dims(),
        kappa: render_element(&m, 1, &mc.kappa),
        kappa_b: render_element(&m, 1, &mc.kappa_b),
        chi: render_element(&m, m.leaf_rank(), &mc.chi),
        taut: b.is_taut(&mc),
    };
    if format == Format::Doc {
        return Ok(to_document(&doc));
    }
    let mut out = String::new();
    let _ = writeln!(out, "model     {} ({})", doc.model, doc.kind);
    let _ = writeln!(out, "dims      n = {}, p = {}, q = {}", doc.total_dim, doc.leaf_rank, doc.codim);
    let _ = writeln!(out, "ambient   {}", list(&doc.degree_dims));
    let _ = writeln!(out, "basic     {}", list(&doc.basic_dims));
    let _ = writeln!(out, "kappa     {}", doc.kappa);
    let _ = writeln!(out, "kappa_b   {}", doc.kappa_b);
    let _ = writeln!(out, "chi       {}", doc.chi);
    let _ = writeln!(out, "taut      {}", doc.taut);
    Ok(out)
}

fn cohomology_output(m: &FoliatedModel, theta: Option<&str>, default: &str, format: Format) -> Result<String> {
    let b = m.basic_subcomplex()?;
    let mc = b.mean_curvature_data()?;
    let spec = theta.unwrap_or(default);
    let theta = if spec == "0" { TwistingForm::zero(&b) } else { parse_theta(&b, &mc, spec)? };
    let report = cohomology(&b, &theta, Sign::Minus, &mc)?;
    let doc = CohomologyDocument::new(&b, &report);
    if format == Format::Doc {
        return Ok(to_document(&doc));
    }
    let rows: Vec<Vec<String>> = doc
        .degrees
        .iter()
        .map(|d| {
            vec![
                d.degree.to_string(),
                d.dim.to_string(),
                d.rank_d.to_string(),
                d.harmonic_basis.join("; "),
            ]
        })
        .collect();
    Ok(format!(
        "model {}, differential d - theta, theta = {}\n{}",
        doc.model,
        doc.theta,
        table(&["k", "dim", "rank_d", "harmonic basis"], &rows)
    ))
}

pub fn betti(a: &ModelArgs, format: Format) -> Result<String> {
    cohomology_output(&model(&a.model)?, None, "0", format)
}

pub fn twisted_betti(a: &ThetaArgs, format: Format) -> Result<String> {
    cohomology_output(&model(&a.model)?, a.theta.as_deref(), "half_kappa_b", format)
}

pub fn signature(a: &ModelArgs, format: Format) -> Result<String> {
    let m = model(&a.model)?;
    let b = m.basic_subcomplex()?;
    let mc = b.mean_curvature_data()?;
    let report = basic_signature(&b, &mc)?;
    let doc = SignatureDocument::new(&m, &report);
    if format == Format::Doc {
        return Ok(to_document(&doc));
    }
    let mut out = String::new();
    let _ = writeln!(out, "model              {}", doc.model);
    let _ = writeln!(out, "q, ell             {}, {}", doc.q, doc.ell);
    let _ = writeln!(out, "dim_plus           {}", doc.dim_plus);
    let _ = writeln!(out, "dim_minus          {}", doc.dim_minus);
    let _ = writeln!(out, "sigma              {}", doc.sigma);
    let (p, n, z) = doc.pairing_signature;
    let _ = writeln!(out, "pairing signature  ({p}, {n}, {z})");
    let _ = writeln!(out, "pairing matrix");
    for row in &doc.pairing {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    Ok(out)
}

#[derive(Serialize)]
struct DualityRow {
    k: usize,
    dim_left: usize,
    dim_right: usize,
}

#[derive(Serialize)]
struct DualityDocument {
    model: String,
    theta: String,
    dual_theta: String,
    rows: Vec<DualityRow>,
}

pub fn duality(a: &ThetaArgs, format: Format) -> Result<String> {
    let m = model(&a.model)?;
    let b = m.basic_subcomplex()?;
    let mc = b.mean_curvature_data()?;
    let spec = a.theta.as_deref().unwrap_or("0");
    let theta = if spec == "0" { TwistingForm::zero(&b) } else { parse_theta(&b, &mc, spec)? };
    let report = duality_check(&b, &theta, &mc)?;
    let dual = TwistingForm::kappa_multiple(&b, &mc, &rat(1)).sub(&theta);
    let doc = DualityDocument {
        model: m.name().to_string(),
        theta: render_element(&m, 1, &theta.ambient(&b)),
        dual_theta: render_element(&m, 1, &dual.ambient(&b)),
        rows: report
            .rows
            .iter()
            .map(|&(k, l, r)| DualityRow {
                k,
                dim_left: l,
                dim_right: r,
            })
            .collect(),
    };
    if format == Format::Doc {
        return Ok(to_document(&doc));
    }
    let rows: Vec<Vec<String>> = doc
        .rows
        .iter()
        .map(|r| vec![r.k.to_string(), r.dim_left.to_string(), r.dim_right.to_string()])
        .collect();
    Ok(format!(
        "model {}, theta = {}, kappa_b - theta = {}\n{}",
        doc.model,
        doc.theta,
        doc.dual_theta,
        table(&["k", "dim H^k(d - theta)", "dim H^(q-k)(d - (kappa_b - theta))"], &rows)
    ))
}

#[derive(Serialize)]
struct SweepRow {
    t: String,
    basic_betti: Vec<usize>,
    twisted_betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<i64>,
}

#[derive(Serialize)]
struct SweepDocument {
    model: String,
    samples: Vec<SweepRow>,
}

pub fn sweep_metric(a: &SweepArgs, format: Format) -> Result<String> {
    let m = model(&a.model)?;
    let samples = a
        .samples
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    let g0 = m
        .frame_metric()
        .ok_or_else(|| Error::Parse(format!("`{}` is not a frame model; sweeps need a frame metric", m.name())))?;
    let g1 = zoo::sweep_endpoint(&m).ok_or_else(|| Error::Assertion("no sweep endpoint".into()))?;
    let metrics = metric_homotopy(g0, &g1, &m, &samples)?;
    let mut rows = Vec::new();
    let mut first: Option<Expected> = None;
    for (t, g) in samples.iter().zip(metrics) {
        let inv = compute_invariants(&m.with_metric(g)?)?;
        rows.push(SweepRow {
            t: t.to_string(),
            basic_betti: inv.basic_betti.clone(),
            twisted_betti: inv.twisted_betti.clone(),
            sigma: inv.sigma,
        });
        match &first {
            None => first = Some(inv),
            Some(f) if f.twisted_betti != inv.twisted_betti || f.sigma != inv.sigma || f.basic_betti != inv.basic_betti => {
                return Err(Error::Assertion(format!("invariants change along the sweep at t = {t}")));
            }
            _ => {}
        }
    }
    let doc = SweepDocument {
        model: m.name().to_string(),
        samples: rows,
    };
    if format == Format::Doc {
        return Ok(to_document(&doc));
    }
    let rows: Vec<Vec<String>> = doc
        .samples
        .iter()
        .map(|r| vec![r.t.clone(), list(&r.basic_betti), list(&r.twisted_betti), sigma_text(r.sigma)])
        .collect();
    Ok(format!("model {}\n{}", doc.model, table(&["t", "basic", "twisted", "sigma"], &rows)))
}

#[derive(Serialize)]
struct InducedRow {
    degree: usize,
    target_dim: usize,
    source_dim: usize,
    rank: usize,
}

#[derive(Serialize)]
struct CertificateSection {
    isomorphism_twists: Vec<String>,
    detected_codims: (usize, usize),
    lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigmas: Option<(i64, i64)>,
}

#[derive(Serialize)]
struct MapDocument {
    map: String,
    source: String,
    target: String,
    valid: bool,
    lambda: String,
    orientation_effect: i32,
    alvarez_pullback: bool,
    induced_on_basic_cohomology: Vec<InducedRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateSection>,
}

pub fn map_check(a: &MapArgs, format: Format) -> Result<String> {
    let loaded = load_map(&a.map)?;
    let f = &loaded.forward;
    let tgt = f.target().basic_subcomplex()?;
    let induced = induced_cohomology_map(f, &TwistingForm::zero(&tgt), Sign::Plus)?;
    let certificate = match &loaded.certificate {
        Some(c) => {
            let r = c.report(3, 20_240_601)?;
            Some(CertificateSection {
                isomorphism_twists: r.isomorphisms.iter().map(|(l, _)| l.clone()).collect(),
                detected_codims: r.detected_codims,
                lambda: r.lambda.to_string(),
                sigmas: r.sigmas,
            })
        }
        None => None,
    };
    let doc = MapDocument {
        map: f.name().to_string(),
        source: f.source().name().to_string(),
        target: f.target().name().to_string(),
        valid: true,
        lambda: f.transfer_constant().map_or_else(|| "undefined".to_string(), ToString::to_string),
        orientation_effect: f.orientation_effect(),
        alvarez_pullback: alvarez_pullback_check(f)?,
        induced_on_basic_cohomology: induced
            .matrices
            .iter()
            .enumerate()
            .map(|(k, m)| InducedRow {
                degree: k,
                target_dim: m.cols(),
                source_dim: m.rows(),
                rank: m.rank(),
            })
            .collect(),
        certificate,
    };
    if format == Format::Doc {
        return Ok(to_document(&doc));
    }
    let mut out = String::new();
    let _ = writeln!(out, "map                 {} ({} -> {})", doc.map, doc.source, doc.target);
    let _ = writeln!(out, "valid               {}", doc.valid);
    let _ = writeln!(out, "lambda              {}", doc.lambda);
    let _ = writeln!(out, "orientation effect  {}", doc.orientation_effect);
    let _ = writeln!(out, "alvarez pullback    {}", doc.alvarez_pullback);
    let rows: Vec<Vec<String>> = doc
        .induced_on_basic_cohomology
        .iter()
        .map(|r| vec![r.degree.to_string(), r.target_dim.to_string(), r.source_dim.to_string(), r.rank.to_string()])
        .collect();
    out.push_str(&table(&["k", "dim target", "dim source", "rank f*"], &rows));
    if let Some(c) = &doc.certificate {
        let _ = writeln!(out, "certificate         verified");
        let _ = writeln!(out, "  twists           {}", c.isomorphism_twists.join(", "));
        let _ = writeln!(out, "  codimensions      {}, {}", c.detected_codims.0, c.detected_codims.1);
        if let Some((s, t)) = c.sigmas {
            let _ = writeln!(out, "  sigma             {s}, {t}");
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ZooRow {
    name: String,
    kind: String,
    total_dim: usize,
    leaf_rank: usize,
    codim: usize,
    basic_betti: Vec<usize>,
    twisted_betti: Vec<usize>,
    taut: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<i64>,
    note: String,
}

#[derive(Serialize)]
struct ZooDocument {
    entries: Vec<ZooRow>,
}

pub fn zoo(a: &ZooArgs, format: Format) -> Result<String> {
    let entries = zoo::all()?;
    if let Some(dir) = &a.export {
        std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
        for e in &entries {
            let path = dir.join(format!("{}.toml", e.name));
            std::fs::write(&path, model_to_toml(&e.model))
                .map_err(|err| Error::Parse(format!("cannot write {}: {err}", path.display())))?;
        }
    }
    let mut rows = Vec::new();
    for e in &entries {
        e.verify()?;
        let m = &e.model;
        rows.push(ZooRow {
            name: e.name.to_string(),
            kind: if m.is_frame_model() { "lie" } else { "cdga" }.to_string(),
            total_dim: m.total_dim(),
            leaf_rank: m.leaf_rank(),
            codim: m.codim(),
            basic_betti: e.expected.basic_betti.clone(),
            twisted_betti: e.expected.twisted_betti.clone(),
            taut: e.expected.taut,
            sigma: e.expected.sigma,
            note: e.note.to_string(),
        });
    }
    let doc = ZooDocument { entries: rows };
    if format == Format::Doc {
        return Ok(to_document(&doc));
    }
    let rows: Vec<Vec<String>> = doc
        .entries
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.kind.clone(),
                format!("{}/{}/{}", r.total_dim, r.leaf_rank, r.codim),
                list(&r.basic_betti),
                list(&r.twisted_betti),
                r.taut.to_string(),
                sigma_text(r.sigma),
            ]
        })
        .collect();
    Ok(table(&["name", "kind", "n/p/q", "basic", "twisted", "taut", "sigma"], &rows))
}
