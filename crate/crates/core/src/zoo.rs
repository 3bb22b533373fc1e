//! Built-in models with frozen expected invariants, and the shipped
//! equivalence certificates between them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::FramedMetric;
use crate::lichnerowicz::{cohomology, Sign, TwistingForm};
use crate::linalg::{Matrix, SymmetricForm};
use crate::model::{CdgaData, FoliatedModel, StructureConstant};
use crate::morphism::{EquivalenceCertificate, FoliatedModelMap};
use crate::scalar::{rat, Rational};
use crate::signature::{basic_signature, half_kappa};

/// Invariants recorded for a zoo entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub basic_betti: Vec<usize>,
    /// Dimensions of `H_{d−½κ_b}`.
    pub twisted_betti: Vec<usize>,
    pub taut: bool,
    /// Basic signature, for even codimension.
    pub sigma: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub model: FoliatedModel,
    pub expected: Expected,
    pub note: &'static str,
}

pub const NAMES: [&str; 11] = [
    "torus2_point",
    "torus3_flow",
    "torus4_point",
    "heisenberg_flow",
    "carriere_sol3",
    "carriere_sol3_tilted",
    "hopf_su2",
    "hopf_x_hopf",
    "carriere_x_torus2",
    "cp2_cdga",
    "unit_function_cdga",
];

const CE_NOTE: &str = "invariant-form complex of the Lie algebra; agreement with the basic cohomology of a compact quotient depends on the group and lattice and is not asserted here";

fn sc(i: usize, j: usize, k: usize, v: i64) -> StructureConstant {
    StructureConstant::new(i, j, k, rat(v))
}

fn lie(name: &str, n: usize, constants: &[StructureConstant], leaf: &[usize]) -> Result<FoliatedModel> {
    FoliatedModel::from_lie_algebra(name, constants, leaf, FramedMetric::orthonormal(n))
}

fn carriere_constants() -> Vec<StructureConstant> {
    vec![sc(3, 1, 1, 1), sc(3, 2, 2, -1)]
}

fn su2_constants() -> Vec<StructureConstant> {
    vec![sc(1, 2, 3, 1), sc(2, 3, 1, 1), sc(3, 1, 2, 1)]
}

fn comb(items: &[(&str, Rational)]) -> Vec<(String, Rational)> {
    items.iter().map(|(l, c)| (l.to_string(), c.clone())).collect()
}

fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Basis `1, x, x²` with `d = 0` and `∫x² = 1`, as a point foliation of
/// codimension 4 (degrees 1 and 3 are empty).
pub fn cp2_data() -> CdgaData {
    CdgaData {
        name: "cp2_cdga".into(),
        dim: 4,
        basis: vec![labels(&["1"]), vec![], labels(&["x"]), vec![], labels(&["xx"])],
        mul: vec![("x".into(), "x".into(), comb(&[("xx", rat(1))]))],
        diff: vec![],
        contractions: vec![],
        kappa: vec![],
        chi: comb(&[("1", rat(1))]),
        integral: comb(&[("xx", rat(1))]),
        metric: vec![
            Matrix::identity(1),
            Matrix::identity(0),
            Matrix::identity(1),
            Matrix::identity(0),
            Matrix::identity(1),
        ],
    }
}

/// Degree 0 spanned by `1, f` with `f² = 0`; `df = fv`, `dt = −vt`.
pub fn unit_function_data() -> CdgaData {
    let one = rat(1);
    CdgaData {
        name: "unit_function_cdga".into(),
        dim: 2,
        basis: vec![labels(&["1", "f"]), labels(&["v", "t", "fv", "ft"]), labels(&["vt", "fvt"])],
        mul: vec![
            ("f".into(), "v".into(), comb(&[("fv", one.clone())])),
            ("f".into(), "t".into(), comb(&[("ft", one.clone())])),
            ("f".into(), "vt".into(), comb(&[("fvt", one.clone())])),
            ("v".into(), "t".into(), comb(&[("vt", one.clone())])),
            ("v".into(), "ft".into(), comb(&[("fvt", one.clone())])),
            ("fv".into(), "t".into(), comb(&[("fvt", one.clone())])),
        ],
        diff: vec![
            ("f".into(), comb(&[("fv", one.clone())])),
            ("t".into(), comb(&[("vt", -one.clone())])),
        ],
        contractions: vec![],
        kappa: vec![],
        chi: comb(&[("1", one.clone())]),
        integral: comb(&[("fvt", one)]),
        metric: vec![Matrix::identity(2), Matrix::identity(4), Matrix::identity(2)],
    }
}

/// Metric for the tilted Carrière entry: same leaf, different complement
/// and transverse metric.
pub fn carriere_tilted_metric() -> FramedMetric {
    let g = Matrix::from_i64(&[&[1, 1, 1], &[1, 2, 1], &[1, 1, 2]]);
    FramedMetric::new(SymmetricForm::new(g).expect("symmetric"), vec![1, 2, 3]).expect("positive definite")
}

fn build(name: &str) -> Result<FoliatedModel> {
    Ok(match name {
        "torus2_point" => lie(name, 2, &[], &[])?,
        "torus3_flow" => lie(name, 3, &[], &[1])?,
        "torus4_point" => lie(name, 4, &[], &[])?,
        "heisenberg_flow" => lie(name, 3, &[sc(1, 2, 3, 1)], &[3])?,
        "carriere_sol3" => lie(name, 3, &carriere_constants(), &[1])?,
        "carriere_sol3_tilted" => {
            FoliatedModel::from_lie_algebra(name, &carriere_constants(), &[1], carriere_tilted_metric())?
        }
        "hopf_su2" => lie(name, 3, &su2_constants(), &[3])?,
        "hopf_x_hopf" => {
            let h = build("hopf_su2")?;
            FoliatedModel::lie_product(name, &h, &h)?
        }
        "carriere_x_torus2" => FoliatedModel::lie_product(name, &build("carriere_sol3")?, &build("torus2_point")?)?,
        "cp2_cdga" => FoliatedModel::from_cdga(cp2_data())?,
        "unit_function_cdga" => FoliatedModel::from_cdga(unit_function_data())?,
        _ => {
            return Err(Error::UnknownModel {
                name: name.to_string(),
                available: NAMES.join(", "),
            })
        }
    })
}

fn expected(name: &str) -> (Expected, &'static str) {
    let e = |basic: &[usize], twisted: &[usize], taut: bool, sigma: Option<i64>| Expected {
        basic_betti: basic.to_vec(),
        twisted_betti: twisted.to_vec(),
        taut,
        sigma,
    };
    match name {
        "torus2_point" => (e(&[1, 2, 1], &[1, 2, 1], true, Some(0)), "exterior algebra on two closed generators"),
        "torus3_flow" => (e(&[1, 2, 1], &[1, 2, 1], true, Some(0)), "basic forms are generated by e2, e3, all closed"),
        "torus4_point" => (
            e(&[1, 4, 6, 4, 1], &[1, 4, 6, 4, 1], true, Some(0)),
            "exterior algebra on four closed generators; the degree-2 pairing is hyperbolic of rank 6",
        ),
        "heisenberg_flow" => (e(&[1, 2, 1], &[1, 2, 1], true, Some(0)), CE_NOTE),
        "carriere_sol3" | "carriere_sol3_tilted" => (
            e(&[1, 1, 0], &[0, 0, 0], false, Some(0)),
            "rational Sol structure constants; lattice and monodromy data are omitted",
        ),
        "hopf_su2" => (e(&[1, 0, 1], &[1, 0, 1], true, Some(0)), CE_NOTE),
        "hopf_x_hopf" => (e(&[1, 0, 2, 0, 1], &[1, 0, 2, 0, 1], true, Some(0)), CE_NOTE),
        "carriere_x_torus2" => (e(&[1, 3, 3, 1, 0], &[0, 0, 0, 0, 0], false, Some(0)), CE_NOTE),
        "cp2_cdga" => (e(&[1, 0, 1, 0, 1], &[1, 0, 1, 0, 1], true, Some(1)), "cohomology ring of the complex projective plane"),
        "unit_function_cdga" => (
            e(&[1, 2, 1], &[1, 2, 1], true, Some(0)),
            "degree-0 part {1, f} with f² = 0, so 1 + f is a unit",
        ),
        _ => unreachable!("names are checked by build"),
    }
}

/// The named zoo entry.
pub fn builtin(name: &str) -> Result<ZooEntry> {
    let model = build(name)?;
    let name = NAMES.iter().copied().find(|n| *n == name).expect("built names are registered");
    let (expected, note) = expected(name);
    Ok(ZooEntry {
        name,
        model,
        expected,
        note,
    })
}

pub fn all() -> Result<Vec<ZooEntry>> {
    NAMES.iter().map(|n| builtin(n)).collect()
}

/// Recomputes the invariants of a model.
pub fn compute_invariants(model: &FoliatedModel) -> Result<Expected> {
    let b = model.basic_subcomplex()?;
    let mc = b.mean_curvature_data()?;
    let basic = cohomology(&b, &TwistingForm::zero(&b), Sign::Minus, &mc)?;
    let twisted = cohomology(&b, &half_kappa(&b, &mc), Sign::Minus, &mc)?;
    let sigma = if b.codim() % 2 == 0 {
        Some(basic_signature(&b, &mc)?.sigma)
    } else {
        None
    };
    Ok(Expected {
        basic_betti: basic.dims,
        twisted_betti: twisted.dims,
        taut: b.is_taut(&mc),
        sigma,
    })
}

impl ZooEntry {
    /// Fails if the recomputed invariants differ from the recorded ones.
    pub fn verify(&self) -> Result<()> {
        let got = compute_invariants(&self.model)?;
        if got != self.expected {
            return Err(Error::Assertion(format!(
                "{}: expected {:?}, computed {:?}",
                self.name, self.expected, got
            )));
        }
        Ok(())
    }
}

/// End metric of the default sweep for a frame model: each leaf vector is
/// doubled and one transverse vector per leaf direction is tilted towards
/// it, which keeps the transverse metric. Point foliations double two frame
/// vectors instead, so that on an orthonormal frame the straight-line path
/// has determinant `(1 + 3v)²` and stays a rational square.
pub fn sweep_endpoint(model: &FoliatedModel) -> Option<FramedMetric> {
    let crate::model::ModelKind::Lie { leaf, metric, .. } = model.kind() else {
        return None;
    };
    let n = model.total_dim();
    let mut s = Matrix::identity(n);
    let transverse: Vec<usize> = (1..=n).filter(|i| !leaf.contains(i)).collect();
    if leaf.is_empty() {
        if n < 2 {
            return None;
        }
        s[(0, 0)] = rat(2);
        s[(1, 1)] = rat(2);
    } else {
        for (l, t) in leaf.iter().zip(&transverse) {
            s[(l - 1, l - 1)] = rat(2);
            s[(l - 1, t - 1)] = Rational::one();
        }
    }
    let g = &(&s.transpose() * metric.gram().matrix()) * &s;
    FramedMetric::new(SymmetricForm::new(g).ok()?, metric.orientation().to_vec()).ok()
}

fn deg1(model: &FoliatedModel, images: &[Vec<i64>]) -> Vec<(usize, usize, Vec<Rational>)> {
    debug_assert_eq!(images.len(), model.degree_dim(1));
    images
        .iter()
        .enumerate()
        .map(|(j, row)| (1, j, row.iter().map(|&c| rat(c)).collect()))
        .collect()
}

/// The shipped certificates: identities on every entry, the Carrière model
/// under two metrics, `x ↦ −x` on the CP² model, the orientation-reversing
/// Carrière automorphism and the coordinate swap of T⁴.
pub fn certificates() -> Result<Vec<EquivalenceCertificate>> {
    let mut out = Vec::new();
    for entry in all()? {
        out.push(EquivalenceCertificate::identity(&entry.model)?);
    }

    let (c0, c1) = (build("carriere_sol3")?, build("carriere_sol3_tilted")?);
    let id_images = deg1(&c0, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    out.push(EquivalenceCertificate {
        name: "carriere_sol3 under two metrics".into(),
        forward: FoliatedModelMap::from_generator_images("carriere metric change", &c0, &c1, &id_images)?,
        backward: FoliatedModelMap::from_generator_images("carriere metric change back", &c1, &c0, &id_images)?,
        mu: c1.unit(),
    });

    let flip = deg1(&c0, &[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]);
    let f = FoliatedModelMap::from_generator_images("carriere e2 -> -e2", &c0, &c0, &flip)?;
    out.push(EquivalenceCertificate {
        name: "carriere_sol3 orientation reversal".into(),
        forward: f.clone(),
        backward: f,
        mu: c0.unit(),
    });

    let cp2 = build("cp2_cdga")?;
    let neg = FoliatedModelMap::from_generator_images("x -> -x", &cp2, &cp2, &[(2, 0, vec![rat(-1)])])?;
    out.push(EquivalenceCertificate {
        name: "cp2_cdga under x -> -x".into(),
        forward: neg.clone(),
        backward: neg,
        mu: cp2.unit(),
    });

    let t4 = build("torus4_point")?;
    let swap = deg1(&t4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    let s = FoliatedModelMap::from_generator_images("torus4 swap", &t4, &t4, &swap)?;
    out.push(EquivalenceCertificate {
        name: "torus4_point coordinate swap".into(),
        forward: s.clone(),
        backward: s,
        mu: t4.unit(),
    });

    Ok(out)
}

/// On the unit-function model: `φ` fixes `f` and sends `v ↦ (1 − f)v`,
/// `t ↦ (1 + f)t`; `ψ` is the identity. `φ` pulls `v` back to `v − df`, so
/// for `θ = v` it induces `μψ*` on classes with `μ = 1 + f`.
pub fn unit_function_maps() -> Result<(FoliatedModelMap, FoliatedModelMap)> {
    let u = build("unit_function_cdga")?;
    let one = Rational::one();
    let z = Rational::zero();
    let phi = FoliatedModelMap::from_generator_images(
        "phi",
        &u,
        &u,
        &[
            (0, 1, vec![z.clone(), one.clone()]),
            (1, 0, vec![one.clone(), z.clone(), -one.clone(), z.clone()]),
            (1, 1, vec![z.clone(), one.clone(), z.clone(), one]),
        ],
    )?;
    let psi = FoliatedModelMap::identity(&u)?;
    Ok((phi, psi))
}

/// `torus3_flow → carriere_sol3` with `e¹, e² ↦ 0`, `e³ ↦ e³`: a valid map
/// that is not an equivalence, under which the Álvarez class does not pull back.
pub fn taut_to_carriere_map() -> Result<FoliatedModelMap> {
    let (t3, c) = (build("torus3_flow")?, build("carriere_sol3")?);
    let images = deg1(&c, &[vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]);
    FoliatedModelMap::from_generator_images("torus3 -> carriere", &t3, &c, &images)
}
