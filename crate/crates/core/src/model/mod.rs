//! Finite foliated models: a graded-commutative differential algebra with
//! leaf contractions, per-degree Grams, an integration functional and the
//! mean curvature and characteristic form of the foliation.
//!
//! Two kinds exist. Frame models are Chevalley–Eilenberg complexes of a Lie
//! algebra with a left-invariant metric and a subalgebra spanned by frame
//! vectors as the leaf directions; everything is derived from the structure
//! constants. Cdga models are given explicitly and only validated.
//!
//! Frame metrics need not have a rational volume element. The model keeps the
//! rational functional `∫̂ = s·coef_{1..n}` (with `s` the orientation sign) and
//! normalises the true integral as `∫ω = ∫̂ω / √det G`, so `Vol(M) = 1`. The
//! stored characteristic form `χ̂` is the leaf covolume scaled by
//! `√det G_LL`; only the transverse determinant `det G / det G_LL` must be a
//! rational square, which keeps every transverse quantity rational.

mod basic;
mod cdga;
mod homotopy;
mod lie;
mod validate;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::FramedMetric;
use crate::linalg::{Matrix, SymmetricForm};
use crate::scalar::Rational;

pub use basic::{BasicComplex, MeanCurvatureData};
pub use cdga::CdgaData;
pub use homotopy::metric_homotopy;
pub use lie::StructureConstant;

/// Sparse vector: `(index, coefficient)` pairs with nonzero coefficients.
pub(crate) type Sparse = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelKind {
    Lie {
        constants: Vec<StructureConstant>,
        leaf: Vec<usize>,
        metric: FramedMetric,
    },
    Cdga(CdgaData),
}

#[derive(Clone, Debug)]
pub struct FoliatedModel {
    name: String,
    kind: ModelKind,
    n: usize,
    p: usize,
    labels: Vec<Vec<String>>,
    /// `products[a][b][i * dim_b + j]` is the product of basis elements `i`
    /// of degree `a` and `j` of degree `b`.
    products: Vec<Vec<Vec<Sparse>>>,
    diff: Vec<Matrix>,
    contractions: Vec<Vec<Matrix>>,
    grams: Vec<SymmetricForm>,
    integral: Vec<Rational>,
    kappa: Vec<Rational>,
    chi: Vec<Rational>,
    volume_det: Rational,
    leaf_det: Rational,
    transverse_scale: Rational,
    star_hat: Vec<Matrix>,
}

/// Raw ingredients shared by both constructors.
pub(crate) struct Ingredients {
    pub name: String,
    pub kind: ModelKind,
    pub n: usize,
    pub labels: Vec<Vec<String>>,
    pub products: Vec<Vec<Vec<Sparse>>>,
    pub diff: Vec<Matrix>,
    pub contractions: Vec<Vec<Matrix>>,
    pub grams: Vec<SymmetricForm>,
    pub integral: Vec<Rational>,
    pub kappa: Vec<Rational>,
    pub chi: Vec<Rational>,
    pub volume_det: Rational,
    pub leaf_det: Rational,
    pub transverse_scale: Rational,
}

pub(crate) fn dense(dim: usize, s: &Sparse) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (i, c) in s {
        v[*i] += c;
    }
    v
}

pub(crate) fn sparse(v: &[Rational]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

impl FoliatedModel {
    /// Builds the model and runs the full validator.
    pub(crate) fn assemble(ing: Ingredients) -> Result<Self> {
        let p = ing.contractions.len();
        if p > ing.n {
            return Err(Error::DimensionMismatch(format!(
                "{p} leaf generators exceed total degree {}",
                ing.n
            )));
        }
        let mut model = FoliatedModel {
            name: ing.name,
            kind: ing.kind,
            n: ing.n,
            p,
            labels: ing.labels,
            products: ing.products,
            diff: ing.diff,
            contractions: ing.contractions,
            grams: ing.grams,
            integral: ing.integral,
            kappa: ing.kappa,
            chi: ing.chi,
            volume_det: ing.volume_det,
            leaf_det: ing.leaf_det,
            transverse_scale: ing.transverse_scale,
            star_hat: Vec::new(),
        };
        model.validate_shapes()?;
        model.star_hat = model.compute_star_hat()?;
        model.validate()?;
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn is_frame_model(&self) -> bool {
        matches!(self.kind, ModelKind::Lie { .. })
    }

    /// The frame metric of a frame model.
    pub fn frame_metric(&self) -> Option<&FramedMetric> {
        match &self.kind {
            ModelKind::Lie { metric, .. } => Some(metric),
            ModelKind::Cdga(_) => None,
        }
    }

    /// Top degree of the ambient algebra.
    pub fn total_dim(&self) -> usize {
        self.n
    }

    pub fn leaf_rank(&self) -> usize {
        self.p
    }

    pub fn codim(&self) -> usize {
        self.n - self.p
    }

    /// Dimension of the ambient degree-`k` space (zero outside `0..=n`).
    pub fn degree_dim(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, Vec::len)
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], Vec::as_slice)
    }

    /// `d: A_k → A_{k+1}`.
    pub fn differential(&self, k: usize) -> Matrix {
        self.diff
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.degree_dim(k + 1), self.degree_dim(k)))
    }

    pub fn generator_count(&self) -> usize {
        self.p
    }

    /// Contraction with leaf generator `x`: `A_k → A_{k−1}`.
    pub fn contraction(&self, x: usize, k: usize) -> Matrix {
        self.contractions[x]
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.degree_dim(k.wrapping_sub(1)), self.degree_dim(k)))
    }

    pub fn gram(&self, k: usize) -> &SymmetricForm {
        &self.grams[k]
    }

    /// The rational top-degree functional `∫̂`.
    pub fn integral(&self) -> &[Rational] {
        &self.integral
    }

    pub fn kappa(&self) -> &[Rational] {
        &self.kappa
    }

    /// The characteristic form scaled by `√det G_LL` (exact for cdga models).
    pub fn chi(&self) -> &[Rational] {
        &self.chi
    }

    pub fn volume_det(&self) -> &Rational {
        &self.volume_det
    }

    pub fn leaf_det(&self) -> &Rational {
        &self.leaf_det
    }

    /// `r = √(det G / det G_LL)`, the transverse volume factor.
    pub fn transverse_scale(&self) -> &Rational {
        &self.transverse_scale
    }

    pub fn unit(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.degree_dim(0)];
        v[0] = Rational::one();
        v
    }

    pub(crate) fn product_of_basis(&self, a: usize, i: usize, b: usize, j: usize) -> &Sparse {
        &self.products[a][b][i * self.degree_dim(b) + j]
    }

    /// Product of `x ∈ A_a` and `y ∈ A_b`.
    pub fn multiply(&self, a: usize, x: &[Rational], b: usize, y: &[Rational]) -> Vec<Rational> {
        let dim = self.degree_dim(a + b);
        let mut out = vec![Rational::zero(); dim];
        if a + b > self.n {
            return out;
        }
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (m, c) in self.product_of_basis(a, i, b, j) {
                    out[*m] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y` from `A_b` to `A_{a+b}`.
    pub fn left_multiplication(&self, a: usize, x: &[Rational], b: usize) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.degree_dim(b))
            .map(|j| {
                let mut e = vec![Rational::zero(); self.degree_dim(b)];
                e[j] = Rational::one();
                self.multiply(a, x, b, &e)
            })
            .collect();
        Matrix::from_columns(self.degree_dim(a + b), &cols)
    }

    /// `∫̂` of a top-degree element.
    pub fn integrate_hat(&self, top: &[Rational]) -> Rational {
        self.integral
            .iter()
            .zip(top)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `∫ ω ∧ χ` for `ω` of degree `q`, with `Vol(M) = 1` for frame models.
    pub fn integrate_with_chi(&self, omega: &[Rational]) -> Rational {
        let top = self.multiply(self.codim(), omega, self.p, &self.chi);
        self.integrate_hat(&top) / (&self.leaf_det * &self.transverse_scale)
    }

    /// Pairing matrix `P̂_k[a][c] = ∫̂(e_a ∧ e_c)` between degrees `k` and `n−k`.
    pub fn duality_pairing(&self, k: usize) -> Matrix {
        let (da, dc) = (self.degree_dim(k), self.degree_dim(self.n - k));
        let mut m = Matrix::zeros(da, dc);
        for a in 0..da {
            for c in 0..dc {
                let top = dense(self.degree_dim(self.n), self.product_of_basis(k, a, self.n - k, c));
                m[(a, c)] = self.integrate_hat(&top);
            }
        }
        m
    }

    fn compute_star_hat(&self) -> Result<Vec<Matrix>> {
        (0..=self.n)
            .map(|k| {
                let pairing = self.duality_pairing(k);
                if !pairing.is_square() || pairing.rank() != pairing.rows() {
                    return Err(Error::axiom(
                        "Poincaré duality",
                        format!("wedge pairing between degrees {k} and {} is degenerate", self.n - k),
                    ));
                }
                pairing
                    .solve(self.grams[k].matrix())
                    .ok_or_else(|| Error::Assertion("duality pairing singular".into()))
            })
            .collect()
    }

    /// The ambient Hodge star on degree `k` up to the factor `√det G`:
    /// `∗ = √det G · Ŝ_k` with `Ŝ_k = P̂_k⁻¹ G_k`.
    pub fn star_hat(&self, k: usize) -> &Matrix {
        &self.star_hat[k]
    }

    /// The transversal star of an ambient degree-`k` element:
    /// `(−1)^{p(q−k)} ∗(γ ∧ χ)`.
    pub fn transversal_star(&self, k: usize, gamma: &[Rational]) -> Vec<Rational> {
        let q = self.codim();
        let wedge = self.multiply(k, gamma, self.p, &self.chi);
        let mut out = self.star_hat(k + self.p).mul_vec(&wedge);
        let sign = if (self.p * (q - k)) % 2 == 1 { -Rational::one() } else { Rational::one() };
        let factor = sign * &self.transverse_scale;
        for c in &mut out {
            *c *= &factor;
        }
        out
    }

    /// The same model with the opposite orientation.
    pub fn reversed_orientation(&self) -> Result<Self> {
        match &self.kind {
            ModelKind::Lie {
                constants,
                leaf,
                metric,
            } => Self::from_lie_algebra(&self.name, constants, leaf, metric.reversed()),
            ModelKind::Cdga(data) => {
                let mut data = data.clone();
                data.integral = data.integral.iter().map(|(l, c)| (l.clone(), -c.clone())).collect();
                Self::from_cdga(data)
            }
        }
    }

    /// A frame model rebuilt with a different metric.
    pub fn with_metric(&self, metric: FramedMetric) -> Result<Self> {
        match &self.kind {
            ModelKind::Lie { constants, leaf, .. } => {
                Self::from_lie_algebra(&self.name, constants, leaf, metric)
            }
            ModelKind::Cdga(_) => Err(Error::axiom(
                "frame model",
                format!("`{}` is not a frame model", self.name),
            )),
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        if let ModelKind::Cdga(data) = &mut self.kind {
            data.name = name.clone();
        }
        self.name = name;
        self
    }

    /// Position of a basis label, as `(degree, index)`.
    pub fn find_label(&self, label: &str) -> Option<(usize, usize)> {
        self.labels
            .iter()
            .enumerate()
            .find_map(|(k, ls)| ls.iter().position(|l| l == label).map(|i| (k, i)))
    }
}
