//! Maps of foliated models, their pullbacks on (twisted) basic cohomology,
//! and homotopy-equivalence certificates.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lichnerowicz::{cohomology, random_closed_thetas, twisted_differential, CohomologyReport, Sign, TwistingForm};
use crate::linalg::{coordinates_in, Matrix};
use crate::model::{BasicComplex, FoliatedModel, MeanCurvatureData};
use crate::scalar::{frac, Rational};
use crate::signature::{basic_signature, half_kappa};

/// A map `f: M → M′`, stored as its pullback `f*: A′_k → A_k` in each degree.
#[derive(Clone, Debug)]
pub struct FoliatedModelMap {
    name: String,
    source: FoliatedModel,
    target: FoliatedModel,
    pullback: Vec<Matrix>,
    transfer: Option<Rational>,
}

fn unit_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn solve_vec(basis: &Matrix, v: &[Rational]) -> Option<Vec<Rational>> {
    coordinates_in(basis, &Matrix::column_vector(v.to_vec())).map(|c| c.column(0))
}

impl FoliatedModelMap {
    /// Extends the images of algebra generators of the target multiplicatively.
    /// Each image is `(degree, target basis index, source element of that degree)`;
    /// the unit maps to the unit. Fails if the given images do not generate the
    /// target algebra, or if the extension is not a valid map.
    pub fn from_generator_images(
        name: impl Into<String>,
        source: &FoliatedModel,
        target: &FoliatedModel,
        images: &[(usize, usize, Vec<Rational>)],
    ) -> Result<Self> {
        let n = target.total_dim();
        if source.total_dim() != n {
            return Err(Error::axiom(
                "map degrees",
                format!("source has top degree {}, target {n}", source.total_dim()),
            ));
        }
        // known[k]: pairs (target element, source image) spanning what is reached so far.
        let mut known: Vec<Vec<(Vec<Rational>, Vec<Rational>)>> = vec![Vec::new(); n + 1];
        known[0].push((target.unit(), source.unit()));
        for (k, i, img) in images {
            if *k > n || *i >= target.degree_dim(*k) {
                return Err(Error::axiom("map generators", format!("no target element {i} in degree {k}")));
            }
            if img.len() != source.degree_dim(*k) {
                return Err(Error::DimensionMismatch(format!(
                    "image of {} has {} entries, expected {}",
                    target.labels(*k)[*i],
                    img.len(),
                    source.degree_dim(*k)
                )));
            }
            known[*k].push((unit_vector(target.degree_dim(*k), *i), img.clone()));
        }
        let span = |list: &[(Vec<Rational>, Vec<Rational>)], dim: usize| {
            let cols: Vec<Vec<Rational>> = list.iter().map(|(t, _)| t.clone()).collect();
            Matrix::from_columns(dim, &cols)
        };
        loop {
            let mut grew = false;
            for a in 0..=n {
                for b in 0..=n - a {
                    let (la, lb) = (known[a].clone(), known[b].clone());
                    for (ta, sa) in &la {
                        for (tb, sb) in &lb {
                            let t = target.multiply(a, ta, b, tb);
                            if is_zero_vec(&t) {
                                continue;
                            }
                            let basis = span(&known[a + b], target.degree_dim(a + b));
                            if solve_vec(&basis, &t).is_none() {
                                known[a + b].push((t, source.multiply(a, sa, b, sb)));
                                grew = true;
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut pullback = Vec::new();
        for k in 0..=n {
            let t = span(&known[k], target.degree_dim(k));
            let (_, pivots) = t.rref();
            if pivots.len() != target.degree_dim(k) {
                return Err(Error::axiom(
                    "map generators",
                    format!("images do not generate target degree {k}"),
                ));
            }
            let t_sq = t.select_columns(&pivots);
            let s_cols: Vec<Vec<Rational>> = pivots.iter().map(|&c| known[k][c].1.clone()).collect();
            let s = Matrix::from_columns(source.degree_dim(k), &s_cols);
            pullback.push(&s * &t_sq.inverse().expect("pivot columns are independent"));
        }
        Self::from_pullback(name, source, target, pullback)
    }

    /// A map from explicit per-degree pullback matrices; validated.
    pub fn from_pullback(
        name: impl Into<String>,
        source: &FoliatedModel,
        target: &FoliatedModel,
        pullback: Vec<Matrix>,
    ) -> Result<Self> {
        let mut map = FoliatedModelMap {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            pullback,
            transfer: None,
        };
        map.validate()?;
        map.transfer = map.compute_transfer()?;
        Ok(map)
    }

    pub fn identity(model: &FoliatedModel) -> Result<Self> {
        let pullback = (0..=model.total_dim())
            .map(|k| Matrix::identity(model.degree_dim(k)))
            .collect();
        Self::from_pullback(format!("id_{}", model.name()), model, model, pullback)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &FoliatedModel {
        &self.source
    }

    pub fn target(&self) -> &FoliatedModel {
        &self.target
    }

    /// `f*: A′_k → A_k`.
    pub fn pullback(&self, k: usize) -> &Matrix {
        &self.pullback[k]
    }

    /// `λ = ∫ f*ν′ ∧ χ / Vol(M)` with `ν′ = ∗̄1` the transverse volume element
    /// of the target; `None` when the codimensions differ.
    pub fn transfer_constant(&self) -> Option<&Rational> {
        self.transfer.as_ref()
    }

    /// Sign of the transfer constant: `+1` if transverse orientation is
    /// preserved, `−1` if reversed, `0` if undefined.
    pub fn orientation_effect(&self) -> i32 {
        match &self.transfer {
            Some(l) if l.is_positive() => 1,
            Some(l) if l.is_negative() => -1,
            _ => 0,
        }
    }

    fn validate(&self) -> Result<()> {
        let (src, tgt) = (&self.source, &self.target);
        let n = tgt.total_dim();
        if self.pullback.len() != n + 1 || src.total_dim() != n {
            return Err(Error::DimensionMismatch("pullback must cover every degree".into()));
        }
        for k in 0..=n {
            let m = &self.pullback[k];
            if m.rows() != src.degree_dim(k) || m.cols() != tgt.degree_dim(k) {
                return Err(Error::DimensionMismatch(format!(
                    "pullback in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    src.degree_dim(k),
                    tgt.degree_dim(k)
                )));
            }
        }
        if self.pullback[0].mul_vec(&tgt.unit()) != src.unit() {
            return Err(Error::MapAxiom {
                axiom: "unit",
                detail: "the unit does not pull back to the unit".into(),
            });
        }
        for a in 0..=n {
            for b in 0..=n - a {
                for i in 0..tgt.degree_dim(a) {
                    let x = unit_vector(tgt.degree_dim(a), i);
                    let fx = self.pullback[a].mul_vec(&x);
                    for j in 0..tgt.degree_dim(b) {
                        let y = unit_vector(tgt.degree_dim(b), j);
                        let lhs = self.pullback[a + b].mul_vec(&tgt.multiply(a, &x, b, &y));
                        let rhs = src.multiply(a, &fx, b, &self.pullback[b].mul_vec(&y));
                        if lhs != rhs {
                            return Err(Error::MapAxiom {
                                axiom: "multiplicativity",
                                detail: format!("({}, {})", tgt.labels(a)[i], tgt.labels(b)[j]),
                            });
                        }
                    }
                }
            }
        }
        for k in 0..n {
            if &self.pullback[k + 1] * &tgt.differential(k) != &src.differential(k) * &self.pullback[k] {
                return Err(Error::MapAxiom {
                    axiom: "commutes with d",
                    detail: format!("degree {k}"),
                });
            }
        }
        let (sb, tb) = (src.basic_subcomplex()?, tgt.basic_subcomplex()?);
        for k in 0..=tgt.codim() {
            for (i, col) in tb.basis(k).columns().iter().enumerate() {
                if sb.coords_of(k, &self.pullback[k].mul_vec(col)).is_none() {
                    return Err(Error::MapAxiom {
                        axiom: "basic to basic",
                        detail: format!("basic element {i} of degree {k}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn compute_transfer(&self) -> Result<Option<Rational>> {
        let (src, tgt) = (&self.source, &self.target);
        if src.codim() != tgt.codim() {
            return Ok(None);
        }
        let q = src.codim();
        let (sb, tb) = (src.basic_subcomplex()?, tgt.basic_subcomplex()?);
        let one = |b: &BasicComplex| b.coords_of(0, &b.model().unit()).expect("the unit is basic");
        let nu_src = sb.star(0).mul_vec(&one(&sb));
        let nu_tgt = tb.to_ambient(q, &tb.star(0).mul_vec(&one(&tb)));
        let pulled = self.pullback[q].mul_vec(&nu_tgt);
        let volume = sb.integrate_with_chi(&nu_src);
        Ok(Some(src.integrate_with_chi(&pulled) / volume))
    }

    /// The pullback restricted to basic elements, in basic coordinates.
    pub fn basic_pullback(&self, src: &BasicComplex, tgt: &BasicComplex, k: usize) -> Result<Matrix> {
        let cols = tgt
            .basis(k)
            .columns()
            .iter()
            .map(|c| src.coords_of(k, &self.pullback[k].mul_vec(c)).ok_or(Error::NotBasic))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(src.dim(k), &cols))
    }

    /// `f*θ′` as a twisting form on the source.
    pub fn pull_theta(&self, src: &BasicComplex, tgt: &BasicComplex, theta: &TwistingForm) -> Result<TwistingForm> {
        TwistingForm::new(src, self.basic_pullback(src, tgt, 1)?.mul_vec(theta.coords()))
    }

    /// `f ∘ g` for `g: M → M′` and `self: M′ → M″`, i.e. pullback `g* ∘ f*`.
    pub fn after(&self, g: &FoliatedModelMap) -> Result<Self> {
        let pullback = (0..self.pullback.len())
            .map(|k| &g.pullback[k] * &self.pullback[k])
            .collect();
        Self::from_pullback(format!("{} . {}", self.name, g.name), &g.source, &self.target, pullback)
    }
}

/// Matrices of `f*: H_{d+sθ}(M′) → H_{d+s f*θ}(M)` in the harmonic bases.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source_report: CohomologyReport,
    pub target_report: CohomologyReport,
    pub matrices: Vec<Matrix>,
}

impl InducedMap {
    pub fn is_isomorphism(&self) -> bool {
        self.matrices
            .iter()
            .all(|m| m.is_square() && m.rank() == m.rows())
    }
}

/// The induced map on twisted basic cohomology. Checks the chain-map
/// condition `f* D′ = D f*` on basic complexes, so closed elements go to
/// closed elements and exact to exact.
pub fn induced_cohomology_map(f: &FoliatedModelMap, theta: &TwistingForm, sign: Sign) -> Result<InducedMap> {
    let (src, tgt) = (f.source.basic_subcomplex()?, f.target.basic_subcomplex()?);
    let (smc, tmc) = (src.mean_curvature_data()?, tgt.mean_curvature_data()?);
    let pulled = f.pull_theta(&src, &tgt, theta)?;
    let q = tgt.codim().min(src.codim());
    let (d_src, d_tgt) = (twisted_differential(&src, &pulled, sign), twisted_differential(&tgt, theta, sign));
    let basic: Vec<Matrix> = (0..=q).map(|k| f.basic_pullback(&src, &tgt, k)).collect::<Result<_>>()?;
    for k in 0..q {
        if &basic[k + 1] * &d_tgt[k] != &d_src[k] * &basic[k] {
            return Err(Error::MapAxiom {
                axiom: "chain map for the twisted differentials",
                detail: format!("degree {k}"),
            });
        }
    }
    let target_report = cohomology(&tgt, theta, sign, &tmc)?;
    let source_report = cohomology(&src, &pulled, sign, &smc)?;
    let mut matrices = Vec::new();
    for k in 0..=q {
        let cols = target_report.harmonic[k]
            .columns()
            .iter()
            .map(|h| {
                let image = basic[k].mul_vec(h);
                let rep = source_report.harmonic_representative(&src, k, &image)?;
                source_report
                    .harmonic_coordinates(k, &rep)
                    .ok_or_else(|| Error::Assertion("harmonic projection left the harmonic space".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        matrices.push(Matrix::from_columns(source_report.dims[k], &cols));
    }
    Ok(InducedMap {
        source_report,
        target_report,
        matrices,
    })
}

/// Whether `f*κ_b′ − κ_b` is exact on the source basic complex.
pub fn alvarez_pullback_check(f: &FoliatedModelMap) -> Result<bool> {
    let (src, tgt) = (f.source.basic_subcomplex()?, f.target.basic_subcomplex()?);
    let (smc, tmc) = (src.mean_curvature_data()?, tgt.mean_curvature_data()?);
    let pulled = f.basic_pullback(&src, &tgt, 1)?.mul_vec(&tmc.kappa_b_basic);
    let diff: Vec<Rational> = pulled.iter().zip(&smc.kappa_b_basic).map(|(a, b)| a - b).collect();
    Ok(src.is_exact(1, &diff))
}

/// `f: M → M′` and `g: M′ → M` with a unit `μ` of the target, such that the
/// composite `φ = f ∘ g` satisfies `φ*θ′ = θ′ − μ⁻¹dμ` and `φ*[ω] = [μω]`.
#[derive(Clone, Debug)]
pub struct EquivalenceCertificate {
    pub name: String,
    pub forward: FoliatedModelMap,
    pub backward: FoliatedModelMap,
    /// Basic degree-0 element of the target, in ambient coordinates.
    pub mu: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    /// `(θ label, dims of H_{d+θ}(M′))` for every sampled twist.
    pub isomorphisms: Vec<(String, Vec<usize>)>,
    /// Top degrees where `H_{d−κ_b}` is nonzero, source then target.
    pub detected_codims: (usize, usize),
    pub lambda: Rational,
    pub orientation_effect: i32,
    pub alvarez: bool,
    /// `(σ(M), σ(M′))` when the codimension is even.
    pub sigmas: Option<(i64, i64)>,
}

fn clause(name: &str, detail: impl Into<String>) -> Error {
    Error::Assertion(format!("{name}: {}", detail.into()))
}

fn top_nonzero(b: &BasicComplex, mc: &MeanCurvatureData) -> Result<usize> {
    let kappa = TwistingForm::kappa_multiple(b, mc, &Rational::one());
    let report = cohomology(b, &kappa, Sign::Minus, mc)?;
    Ok(report.dims.iter().rposition(|&d| d > 0).unwrap_or(0))
}

impl EquivalenceCertificate {
    /// The certificate `(id, id, 1)` of a model.
    pub fn identity(model: &FoliatedModel) -> Result<Self> {
        let id = FoliatedModelMap::identity(model)?;
        Ok(EquivalenceCertificate {
            name: format!("identity on {}", model.name()),
            forward: id.clone(),
            backward: id,
            mu: model.unit(),
        })
    }

    /// Checks the certificate and every consequence of the equivalence.
    pub fn report(&self, random_twists: usize, seed: u64) -> Result<EquivalenceReport> {
        let (f, g) = (&self.forward, &self.backward);
        let (src, tgt) = (f.source.basic_subcomplex()?, f.target.basic_subcomplex()?);
        let (smc, tmc) = (src.mean_curvature_data()?, tgt.mean_curvature_data()?);
        let phi = f.after(g)?;
        let psi = g.after(f)?;

        let mut twists: Vec<(String, TwistingForm)> = vec![
            ("0".into(), TwistingForm::zero(&tgt)),
            ("1/2 kappa_b".into(), half_kappa(&tgt, &tmc)),
            ("-1/2 kappa_b".into(), TwistingForm::kappa_multiple(&tgt, &tmc, &frac(-1, 2))),
            ("kappa_b".into(), TwistingForm::kappa_multiple(&tgt, &tmc, &Rational::one())),
            ("-kappa_b".into(), TwistingForm::kappa_multiple(&tgt, &tmc, &-Rational::one())),
        ];
        for (i, t) in random_closed_thetas(&tgt, random_twists, seed).into_iter().enumerate() {
            twists.push((format!("random #{i} (seed {seed})"), t));
        }

        let mut isomorphisms = Vec::new();
        for (label, theta) in &twists {
            let induced = induced_cohomology_map(f, theta, Sign::Plus)?;
            if !induced.is_isomorphism() {
                return Err(clause("isomorphism", format!("f* is not bijective for θ = {label}")));
            }
            unit_relation(&phi, theta, &self.mu).map_err(|e| clause("unit", format!("{e} for θ = {label}")))?;
            let back = induced_cohomology_map(&psi, &f.pull_theta(&src, &tgt, theta)?, Sign::Plus)?;
            if !back.is_isomorphism() {
                return Err(clause("isomorphism", format!("(g∘f)* is not bijective for θ = {label}")));
            }
            isomorphisms.push((label.clone(), induced.target_report.dims.clone()));
        }

        let detected_codims = (top_nonzero(&src, &smc)?, top_nonzero(&tgt, &tmc)?);
        if detected_codims.0 != detected_codims.1 || detected_codims.0 != src.codim() {
            return Err(clause(
                "codimension",
                format!("detected {} and {}", detected_codims.0, detected_codims.1),
            ));
        }

        let lambda = f
            .transfer_constant()
            .cloned()
            .ok_or_else(|| clause("transfer constant", "codimensions differ"))?;
        if lambda.is_zero() {
            return Err(clause("transfer constant", "λ = 0"));
        }
        let q = tgt.codim();
        let one = |b: &BasicComplex| b.coords_of(0, &b.model().unit()).expect("the unit is basic");
        let vol = |b: &BasicComplex| b.integrate_with_chi(&b.star(0).mul_vec(&one(b)));
        let ratio = vol(&src) / vol(&tgt);
        if q % 2 == 0 {
            let ell = q / 2;
            let tilde = cohomology(&tgt, &half_kappa(&tgt, &tmc), Sign::Minus, &tmc)?;
            let basis = tilde.harmonic[ell].columns();
            for a in &basis {
                for c in &basis {
                    let prod = tgt.to_ambient(q, &tgt.wedge(ell, a, ell, c));
                    let lhs = f.source.integrate_with_chi(&f.pullback(q).mul_vec(&prod));
                    let rhs = &lambda * &ratio * tgt.integrate_with_chi(&tgt.wedge(ell, a, ell, c));
                    if lhs != rhs {
                        return Err(clause("pairing scaling", format!("{lhs} vs {rhs}")));
                    }
                }
            }
        }

        let alvarez = alvarez_pullback_check(f)?;
        if !alvarez {
            return Err(clause("Álvarez class", "f*[κ_b′] differs from [κ_b]"));
        }

        let sigmas = if q % 2 == 0 {
            let (s, t) = (basic_signature(&src, &smc)?.sigma, basic_signature(&tgt, &tmc)?.sigma);
            if s != i64::from(f.orientation_effect()) * t {
                return Err(clause(
                    "signature",
                    format!("σ = {s} and σ′ = {t} with orientation effect {}", f.orientation_effect()),
                ));
            }
            Some((s, t))
        } else {
            None
        };

        Ok(EquivalenceReport {
            isomorphisms,
            detected_codims,
            lambda,
            orientation_effect: f.orientation_effect(),
            alvarez,
            sigmas,
        })
    }
}

/// For an endomorphism `φ` of a model, a closed basic `θ` and a basic unit
/// `μ` (ambient coordinates): checks `μ·φ*θ + dμ = μθ` and that
/// `φ*ω − μω` is `(d + φ*θ)`-exact for every `(d + θ)`-harmonic `ω`.
pub fn unit_relation(phi: &FoliatedModelMap, theta: &TwistingForm, mu: &[Rational]) -> Result<()> {
    let b = phi.target.basic_subcomplex()?;
    let mc = b.mean_curvature_data()?;
    let mu = b.coords_of(0, mu).ok_or(Error::NotBasic)?;
    if b.left_multiplication(0, &mu, 0).rank() != b.dim(0) {
        return Err(Error::Assertion("μ is not invertible".into()));
    }
    let pulled = phi.pull_theta(&b, &b, theta)?;
    let lhs: Vec<Rational> = b
        .wedge(0, &mu, 1, pulled.coords())
        .iter()
        .zip(b.diff(0).mul_vec(&mu))
        .map(|(a, c)| a + c)
        .collect();
    if lhs != b.wedge(0, &mu, 1, theta.coords()) {
        return Err(Error::Assertion("φ*θ ≠ θ − μ⁻¹dμ".into()));
    }
    let report = cohomology(&b, theta, Sign::Plus, &mc)?;
    let d = twisted_differential(&b, &pulled, Sign::Plus);
    for k in 0..=b.codim() {
        let basic = phi.basic_pullback(&b, &b, k)?;
        for h in report.harmonic[k].columns() {
            let diff: Vec<Rational> = basic
                .mul_vec(&h)
                .iter()
                .zip(b.wedge(0, &mu, k, &h))
                .map(|(a, c)| a - c)
                .collect();
            let exact = is_zero_vec(&diff) || (k > 0 && solve_vec(&d[k - 1], &diff).is_some());
            if !exact {
                return Err(Error::Assertion(format!("φ* ≠ μ· on degree {k} classes")));
            }
        }
    }
    Ok(())
}
