//! Text formats: the element expression syntax, TOML model and map files,
//! and structured report documents.
//!
//! Expressions are sums of terms `c * label`, `label` or a bare constant
//! `c` (a multiple of the unit), with `c` an exact rational such as `-3/4`.
//! Frame model labels are `e{1,2}`; the unit is `1`.

use std::path::{Path, PathBuf};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::FramedMetric;
use crate::lichnerowicz::{CohomologyReport, TwistingForm};
use crate::linalg::{Matrix, SymmetricForm};
use crate::model::{BasicComplex, CdgaData, FoliatedModel, MeanCurvatureData, ModelKind, StructureConstant};
use crate::morphism::{EquivalenceCertificate, FoliatedModelMap};
use crate::scalar::{frac, parse_rational, Rational};
use crate::signature::SignatureReport;
use crate::zoo;

/// A parsed term: `None` stands for the unit.
pub type Term = (Option<String>, Rational);

/// Splits an expression into signed terms.
pub fn parse_expression(s: &str) -> Result<Vec<Term>> {
    let text = s.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let mut negative = false;
    for ch in text.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if current.trim().is_empty() && chunks.is_empty() && !negative {
                negative = ch == '-';
                current.clear();
                continue;
            }
            if current.trim().is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            chunks.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
            continue;
        }
        current.push(ch);
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("expression `{s}` ends with a sign")));
    }
    chunks.push((negative, current));

    let mut terms = Vec::new();
    for (neg, body) in chunks {
        let body = body.trim();
        let (coef, label) = match body.split_once('*') {
            Some((c, l)) => (parse_rational(c.trim())?, Some(l.trim().to_string())),
            None => match parse_rational(body) {
                Ok(c) => (c, None),
                Err(_) => (Rational::one(), Some(body.to_string())),
            },
        };
        if let Some(l) = &label {
            if l.is_empty() || l.contains(char::is_whitespace) {
                return Err(Error::Parse(format!("bad label `{l}` in `{s}`")));
            }
        }
        terms.push((label, if neg { -coef } else { coef }));
    }
    Ok(terms)
}

/// Renders `(label, coefficient)` pairs; terms labelled `unit` print as bare
/// constants and zero coefficients are skipped.
pub fn render_terms<'a>(terms: impl IntoIterator<Item = (&'a str, &'a Rational)>, unit: &str) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let body = |v: &Rational| {
            if label == unit {
                v.to_string()
            } else if v.is_one() {
                label.to_string()
            } else if v == &-Rational::one() {
                format!("-{label}")
            } else {
                format!("{v} * {label}")
            }
        };
        if out.is_empty() {
            out = body(c);
        } else if c.is_negative() {
            out.push_str(&format!(" - {}", body(&-c.clone())));
        } else {
            out.push_str(&format!(" + {}", body(c)));
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn unit_label(model: &FoliatedModel) -> &str {
    &model.labels(0)[0]
}

/// An element of a model given as an expression, with its degree. The zero
/// expression `0` has no degree and takes `default_degree`.
pub fn resolve_element(model: &FoliatedModel, s: &str, default_degree: usize) -> Result<(usize, Vec<Rational>)> {
    let terms = parse_expression(s)?;
    let mut degree = None;
    let mut located = Vec::new();
    for (label, c) in terms {
        let (k, i) = match &label {
            None => (0, 0),
            Some(l) => model
                .find_label(l)
                .ok_or_else(|| Error::Parse(format!("unknown label `{l}` in model `{}`", model.name())))?,
        };
        if c.is_zero() {
            continue;
        }
        match degree {
            Some(d) if d != k => return Err(Error::Inhomogeneous),
            _ => degree = Some(k),
        }
        located.push((i, c));
    }
    let k = degree.unwrap_or(default_degree);
    let mut v = vec![Rational::zero(); model.degree_dim(k)];
    for (i, c) in located {
        v[i] += c;
    }
    Ok((k, v))
}

/// An element that must have degree `k`.
pub fn resolve_in_degree(model: &FoliatedModel, k: usize, s: &str) -> Result<Vec<Rational>> {
    let (deg, v) = resolve_element(model, s, k)?;
    if deg != k {
        return Err(Error::Parse(format!("`{s}` has degree {deg}, expected {k}")));
    }
    Ok(v)
}

pub fn render_element(model: &FoliatedModel, k: usize, coords: &[Rational]) -> String {
    render_terms(
        model.labels(k).iter().map(String::as_str).zip(coords),
        unit_label(model),
    )
}

/// Resolves a command-line twist: `kappa_b`, `half_kappa_b`,
/// `minus_half_kappa_b`, or a degree-1 expression.
pub fn parse_theta(b: &BasicComplex, mc: &MeanCurvatureData, spec: &str) -> Result<TwistingForm> {
    let multiple = match spec.trim() {
        "kappa_b" => Some(Rational::one()),
        "half_kappa_b" => Some(frac(1, 2)),
        "minus_half_kappa_b" => Some(frac(-1, 2)),
        _ => None,
    };
    if let Some(c) = multiple {
        return Ok(TwistingForm::kappa_multiple(b, mc, &c));
    }
    let v = resolve_in_degree(b.model(), 1, spec)?;
    TwistingForm::from_ambient(b, &v)
}

fn rational_rows(rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != width) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(Matrix::from_columns(
        parsed.len(),
        &(0..width).map(|c| parsed.iter().map(|r| r[c].clone()).collect()).collect::<Vec<_>>(),
    ))
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ModelFile {
    Lie(LieFile),
    Cdga(CdgaFile),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LieFile {
    name: String,
    dim: usize,
    leaf: Vec<usize>,
    /// `[i, j, k, "c"]`: `[e_i, e_j] = ... + c e_k + ...`.
    structure_constants: Vec<(usize, usize, usize, String)>,
    metric: Vec<Vec<String>>,
    orientation: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CdgaMetric {
    Identity(String),
    Grams(Vec<Vec<Vec<String>>>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CdgaFile {
    name: String,
    dim: usize,
    basis: Vec<Vec<String>>,
    #[serde(default)]
    mul: Vec<(String, String, String)>,
    #[serde(default)]
    diff: Vec<(String, String)>,
    #[serde(default)]
    contractions: Vec<Vec<(String, String)>>,
    #[serde(default = "zero_text")]
    kappa: String,
    chi: String,
    integral: String,
    metric: CdgaMetric,
}

fn zero_text() -> String {
    "0".into()
}

fn combination(s: &str, unit: &str) -> Result<Vec<(String, Rational)>> {
    Ok(parse_expression(s)?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l.unwrap_or_else(|| unit.to_string()), c))
        .collect())
}

fn render_combination(comb: &[(String, Rational)], unit: &str) -> String {
    render_terms(comb.iter().map(|(l, c)| (l.as_str(), c)), unit)
}

impl CdgaFile {
    fn into_data(self) -> Result<CdgaData> {
        let unit = self
            .basis
            .first()
            .and_then(|b| b.first())
            .cloned()
            .ok_or_else(|| Error::Parse("degree 0 must list the unit first".into()))?;
        let pairs = |list: Vec<(String, String)>| -> Result<Vec<(String, Vec<(String, Rational)>)>> {
            list.into_iter().map(|(l, e)| Ok((l, combination(&e, &unit)?))).collect()
        };
        let metric = match self.metric {
            CdgaMetric::Identity(s) if s == "identity" => {
                self.basis.iter().map(|b| Matrix::identity(b.len())).collect()
            }
            CdgaMetric::Identity(s) => return Err(Error::Parse(format!("unknown metric `{s}`"))),
            CdgaMetric::Grams(gs) => gs
                .iter()
                .zip(&self.basis)
                .map(|(g, b)| if g.is_empty() { Ok(Matrix::zeros(b.len(), b.len())) } else { rational_rows(g) })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(CdgaData {
            name: self.name,
            dim: self.dim,
            mul: self
                .mul
                .into_iter()
                .map(|(a, b, e)| Ok((a, b, combination(&e, &unit)?)))
                .collect::<Result<_>>()?,
            diff: pairs(self.diff)?,
            contractions: self.contractions.into_iter().map(pairs).collect::<Result<_>>()?,
            kappa: combination(&self.kappa, &unit)?,
            chi: combination(&self.chi, &unit)?,
            integral: combination(&self.integral, &unit)?,
            metric,
            basis: self.basis,
        })
    }

    fn from_data(d: &CdgaData) -> Self {
        let unit = d.basis[0][0].clone();
        let pairs = |list: &[(String, Vec<(String, Rational)>)]| {
            list.iter()
                .map(|(l, c)| (l.clone(), render_combination(c, &unit)))
                .collect()
        };
        CdgaFile {
            name: d.name.clone(),
            dim: d.dim,
            basis: d.basis.clone(),
            mul: d
                .mul
                .iter()
                .map(|(a, b, c)| (a.clone(), b.clone(), render_combination(c, &unit)))
                .collect(),
            diff: pairs(&d.diff),
            contractions: d.contractions.iter().map(|t| pairs(t)).collect(),
            kappa: render_combination(&d.kappa, &unit),
            chi: render_combination(&d.chi, &unit),
            integral: render_combination(&d.integral, &unit),
            metric: CdgaMetric::Grams(d.metric.iter().map(matrix_rows).collect()),
        }
    }
}

/// Parses a model file.
pub fn model_from_toml(text: &str) -> Result<FoliatedModel> {
    let file: ModelFile = toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))?;
    match file {
        ModelFile::Lie(f) => {
            let constants = f
                .structure_constants
                .iter()
                .map(|(i, j, k, c)| Ok(StructureConstant::new(*i, *j, *k, parse_rational(c)?)))
                .collect::<Result<Vec<_>>>()?;
            let gram = SymmetricForm::new(rational_rows(&f.metric)?)?;
            let metric = FramedMetric::new(gram, f.orientation)?;
            if metric.dim() != f.dim {
                return Err(Error::FrameMismatch(f.dim, metric.dim()));
            }
            FoliatedModel::from_lie_algebra(&f.name, &constants, &f.leaf, metric)
        }
        ModelFile::Cdga(f) => FoliatedModel::from_cdga(f.into_data()?),
    }
}

/// Serialises a model back into the file format.
pub fn model_to_toml(model: &FoliatedModel) -> String {
    let file = match model.kind() {
        ModelKind::Lie {
            constants,
            leaf,
            metric,
        } => ModelFile::Lie(LieFile {
            name: model.name().to_string(),
            dim: model.total_dim(),
            leaf: leaf.clone(),
            structure_constants: constants
                .iter()
                .map(|c| (c.i, c.j, c.k, c.value.to_string()))
                .collect(),
            metric: matrix_rows(metric.gram().matrix()),
            orientation: metric.orientation().to_vec(),
        }),
        ModelKind::Cdga(data) => ModelFile::Cdga(CdgaFile::from_data(data)),
    };
    toml::to_string(&file).expect("model files serialise")
}

/// Loads `zoo:<name>` or a model file path (relative paths against `base`).
pub fn load_model(spec: &str, base: Option<&Path>) -> Result<FoliatedModel> {
    if let Some(name) = spec.strip_prefix("zoo:") {
        return Ok(zoo::builtin(name)?.model);
    }
    let path = match base {
        Some(dir) if Path::new(spec).is_relative() => dir.join(spec),
        _ => PathBuf::from(spec),
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    model_from_toml(&text)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    #[serde(default)]
    name: Option<String>,
    source: String,
    target: String,
    /// Row `j` is the pullback of the target's `j`-th degree-1 basis element
    /// in source coordinates.
    #[serde(default)]
    matrix_deg1: Option<Vec<Vec<String>>>,
    /// `[target label, source expression]`.
    #[serde(default)]
    generators: Option<Vec<(String, String)>>,
    #[serde(default)]
    backward_matrix_deg1: Option<Vec<Vec<String>>>,
    #[serde(default)]
    backward_generators: Option<Vec<(String, String)>>,
    /// Unit of the target making the composite homotopic to the identity.
    #[serde(default)]
    mu: Option<String>,
}

/// A map file: the forward map and, when a backward map is given, the
/// certificate it forms.
#[derive(Clone, Debug)]
pub struct LoadedMap {
    pub forward: FoliatedModelMap,
    pub certificate: Option<EquivalenceCertificate>,
}

fn images(
    source: &FoliatedModel,
    target: &FoliatedModel,
    matrix: Option<&Vec<Vec<String>>>,
    generators: Option<&Vec<(String, String)>>,
) -> Result<Vec<(usize, usize, Vec<Rational>)>> {
    match (matrix, generators) {
        (Some(rows), None) => {
            if rows.len() != target.degree_dim(1) {
                return Err(Error::Parse(format!(
                    "matrix_deg1 has {} rows, target degree 1 has {}",
                    rows.len(),
                    target.degree_dim(1)
                )));
            }
            rows.iter()
                .enumerate()
                .map(|(j, row)| {
                    if row.len() != source.degree_dim(1) {
                        return Err(Error::Parse(format!("matrix_deg1 row {} has the wrong length", j + 1)));
                    }
                    Ok((1, j, row.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?))
                })
                .collect()
        }
        (None, Some(gens)) => gens
            .iter()
            .map(|(label, expr)| {
                let (k, i) = target
                    .find_label(label)
                    .ok_or_else(|| Error::Parse(format!("unknown target label `{label}`")))?;
                Ok((k, i, resolve_in_degree(source, k, expr)?))
            })
            .collect(),
        _ => Err(Error::Parse("give exactly one of matrix_deg1 and generators".into())),
    }
}

/// Parses a map file; model references resolve against `base`.
pub fn map_from_toml(text: &str, base: Option<&Path>) -> Result<LoadedMap> {
    let file: MapFile = toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))?;
    let source = load_model(&file.source, base)?;
    let target = load_model(&file.target, base)?;
    let name = file.name.clone().unwrap_or_else(|| format!("{} -> {}", source.name(), target.name()));
    let fwd = images(&source, &target, file.matrix_deg1.as_ref(), file.generators.as_ref())?;
    let forward = FoliatedModelMap::from_generator_images(name.clone(), &source, &target, &fwd)?;
    let certificate = if file.backward_matrix_deg1.is_some() || file.backward_generators.is_some() {
        let bwd = images(
            &target,
            &source,
            file.backward_matrix_deg1.as_ref(),
            file.backward_generators.as_ref(),
        )?;
        let backward = FoliatedModelMap::from_generator_images(format!("{name} (backward)"), &target, &source, &bwd)?;
        let mu = match &file.mu {
            Some(s) => resolve_in_degree(&target, 0, s)?,
            None => target.unit(),
        };
        Some(EquivalenceCertificate {
            name,
            forward: forward.clone(),
            backward,
            mu,
        })
    } else {
        if file.mu.is_some() {
            return Err(Error::Parse("mu needs a backward map".into()));
        }
        None
    };
    Ok(LoadedMap { forward, certificate })
}

pub fn load_map(path: &Path) -> Result<LoadedMap> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    map_from_toml(&text, path.parent())
}

#[derive(Debug, Serialize)]
pub struct CohomologyDegree {
    pub degree: usize,
    pub dim: usize,
    pub rank_d: usize,
    pub harmonic_basis: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CohomologyDocument {
    pub model: String,
    pub theta: String,
    pub sign: String,
    pub degrees: Vec<CohomologyDegree>,
}

impl CohomologyDocument {
    pub fn new(b: &BasicComplex, report: &CohomologyReport) -> Self {
        let model = b.model();
        let degrees = (0..=b.codim())
            .map(|k| CohomologyDegree {
                degree: k,
                dim: report.dims[k],
                rank_d: report.ranks[k],
                harmonic_basis: report.harmonic[k]
                    .columns()
                    .iter()
                    .map(|c| render_element(model, k, &b.to_ambient(k, c)))
                    .collect(),
            })
            .collect();
        CohomologyDocument {
            model: model.name().to_string(),
            theta: render_element(model, 1, &report.theta.ambient(b)),
            sign: report.sign.symbol().to_string(),
            degrees,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SignatureDocument {
    pub model: String,
    pub q: usize,
    pub ell: usize,
    pub sigma: i64,
    pub dim_plus: usize,
    pub dim_minus: usize,
    pub pairing: Vec<Vec<String>>,
    pub pairing_signature: (usize, usize, usize),
}

impl SignatureDocument {
    pub fn new(model: &FoliatedModel, r: &SignatureReport) -> Self {
        SignatureDocument {
            model: model.name().to_string(),
            q: r.q,
            ell: r.ell,
            sigma: r.sigma,
            dim_plus: r.dim_plus,
            dim_minus: r.dim_minus,
            pairing: matrix_rows(&r.pairing),
            pairing_signature: r.pairing_signature,
        }
    }
}

/// Serialises a report document as TOML.
pub fn to_document<T: Serialize>(doc: &T) -> String {
    toml::to_string(doc).expect("report documents serialise")
}
