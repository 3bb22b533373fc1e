//! The basic subcomplex and the mean curvature data of a model.

use num_traits::Zero;

use super::FoliatedModel;
use crate::error::{Error, Result};
use crate::linalg::{coordinates_in, Matrix, SymmetricForm};
use crate::scalar::Rational;

/// Basic elements (`ι_X α = ι_X dα = 0` for every leaf generator `X`) with
/// the restricted differential, Grams, transversal star and products.
/// Vectors handed to and returned from this type are coordinates in the
/// per-degree basic bases unless a method says otherwise.
#[derive(Clone, Debug)]
pub struct BasicComplex {
    model: FoliatedModel,
    q: usize,
    bases: Vec<Matrix>,
    diff: Vec<Matrix>,
    grams: Vec<SymmetricForm>,
    star: Vec<Matrix>,
    /// `wedge_one[j][k]`: left multiplication by the `j`-th basic 1-element
    /// from degree `k` to `k + 1`.
    wedge_one: Vec<Vec<Matrix>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanCurvatureData {
    /// Ambient degree-1 mean curvature form.
    pub kappa: Vec<Rational>,
    /// Orthogonal projection of `kappa` onto basic 1-forms (ambient coordinates).
    pub kappa_b: Vec<Rational>,
    /// `kappa_b` in the basic degree-1 basis.
    pub kappa_b_basic: Vec<Rational>,
    /// Characteristic form, scaled as in [`FoliatedModel::chi`].
    pub chi: Vec<Rational>,
    /// `dχ + κ ∧ χ` in ambient degree `p + 1`.
    pub rummler_residual: Vec<Rational>,
}

fn solve_vec(basis: &Matrix, v: &[Rational]) -> Option<Vec<Rational>> {
    coordinates_in(basis, &Matrix::column_vector(v.to_vec())).map(|c| c.column(0))
}

impl BasicComplex {
    pub(crate) fn build(model: &FoliatedModel) -> Result<Self> {
        let n = model.total_dim();
        let q = model.codim();
        let mut bases = Vec::new();
        for k in 0..=n {
            let dim = model.degree_dim(k);
            let mut stacked = Matrix::zeros(0, dim);
            for x in 0..model.generator_count() {
                stacked = stacked.vstack(&model.contraction(x, k));
                stacked = stacked.vstack(&(&model.contraction(x, k + 1) * &model.differential(k)));
            }
            let kernel = stacked.kernel();
            if k > q {
                if kernel.cols() > 0 {
                    return Err(Error::axiom(
                        "basic forms vanish above the codimension",
                        format!("{} basic elements in degree {k}", kernel.cols()),
                    ));
                }
                continue;
            }
            bases.push(kernel);
        }

        let dim = |k: usize| bases.get(k).map_or(0, Matrix::cols);
        let mut diff = Vec::new();
        for k in 0..=q {
            if k == q {
                diff.push(Matrix::zeros(0, dim(q)));
                continue;
            }
            let image = &model.differential(k) * &bases[k];
            let coords = coordinates_in(&bases[k + 1], &image).ok_or_else(|| {
                Error::axiom("basic complex closed under d", format!("degree {k}"))
            })?;
            diff.push(coords);
        }

        let grams: Vec<SymmetricForm> = (0..=q).map(|k| model.gram(k).restrict(&bases[k])).collect();

        let mut star = Vec::new();
        for k in 0..=q {
            let cols = bases[k]
                .columns()
                .iter()
                .map(|c| {
                    let image = model.transversal_star(k, c);
                    solve_vec(&bases[q - k], &image).ok_or_else(|| {
                        Error::axiom("transversal star preserves basic elements", format!("degree {k}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            star.push(Matrix::from_columns(dim(q - k), &cols));
        }

        for a in 0..=q {
            for b in a..=q - a {
                for x in bases[a].columns() {
                    for y in bases[b].columns() {
                        let prod = model.multiply(a, &x, b, &y);
                        if solve_vec(&bases[a + b], &prod).is_none() {
                            return Err(Error::axiom(
                                "basic complex closed under products",
                                format!("degrees {a} and {b}"),
                            ));
                        }
                    }
                }
            }
        }

        let mut complex = BasicComplex {
            model: model.clone(),
            q,
            bases,
            diff,
            grams,
            star,
            wedge_one: Vec::new(),
        };
        complex.wedge_one = (0..complex.dim(1))
            .map(|j| {
                let mut e = vec![Rational::zero(); complex.dim(1)];
                e[j] = num_traits::One::one();
                (0..=q).map(|k| complex.left_multiplication(1, &e, k)).collect()
            })
            .collect();
        Ok(complex)
    }

    pub fn model(&self) -> &FoliatedModel {
        &self.model
    }

    pub fn codim(&self) -> usize {
        self.q
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, Matrix::cols)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.q).map(|k| self.dim(k)).collect()
    }

    /// Columns are the basic basis elements of degree `k` in ambient coordinates.
    pub fn basis(&self, k: usize) -> Matrix {
        self.bases
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.model.degree_dim(k), 0))
    }

    /// Restricted differential from degree `k` to `k + 1`.
    pub fn diff(&self, k: usize) -> Matrix {
        self.diff
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn gram(&self, k: usize) -> SymmetricForm {
        self.grams
            .get(k)
            .cloned()
            .unwrap_or_else(|| SymmetricForm::identity(0))
    }

    /// Transversal star from degree `k` to `q − k`.
    pub fn star(&self, k: usize) -> &Matrix {
        &self.star[k]
    }

    pub fn to_ambient(&self, k: usize, x: &[Rational]) -> Vec<Rational> {
        self.basis(k).mul_vec(x)
    }

    /// Basic coordinates of an ambient element, if it is basic.
    pub fn coords_of(&self, k: usize, ambient: &[Rational]) -> Option<Vec<Rational>> {
        solve_vec(&self.basis(k), ambient)
    }

    /// Product of basic elements of degrees `a` and `b`.
    pub fn wedge(&self, a: usize, x: &[Rational], b: usize, y: &[Rational]) -> Vec<Rational> {
        if a + b > self.q {
            return Vec::new();
        }
        let prod = self
            .model
            .multiply(a, &self.to_ambient(a, x), b, &self.to_ambient(b, y));
        self.coords_of(a + b, &prod)
            .expect("basic complex is closed under products")
    }

    /// Matrix of `y ↦ x ∧ y` from degree `b` to `a + b`.
    pub fn left_multiplication(&self, a: usize, x: &[Rational], b: usize) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim(b))
            .map(|j| {
                let mut e = vec![Rational::zero(); self.dim(b)];
                e[j] = num_traits::One::one();
                self.wedge(a, x, b, &e)
            })
            .collect();
        Matrix::from_columns(self.dim(a + b), &cols)
    }

    /// `θ ∧ ·` from degree `k` to `k + 1` for a basic 1-element `θ`.
    pub fn theta_wedge(&self, theta: &[Rational], k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim(k + 1), self.dim(k));
        if k >= self.q {
            return m;
        }
        for (j, c) in theta.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.wedge_one[j][k].scale(c);
            }
        }
        m
    }

    /// `∫ ω ∧ χ` for a basic element of degree `q`.
    pub fn integrate_with_chi(&self, omega: &[Rational]) -> Rational {
        self.model.integrate_with_chi(&self.to_ambient(self.q, omega))
    }

    /// Whether a degree-`k` element lies in the image of `d`.
    pub fn is_exact(&self, k: usize, x: &[Rational]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        if k == 0 {
            return false;
        }
        coordinates_in(&self.diff(k - 1), &Matrix::column_vector(x.to_vec())).is_some()
    }

    /// Basis (columns) of closed basic 1-elements.
    pub fn closed_one_forms(&self) -> Matrix {
        self.diff(1).kernel()
    }

    pub fn mean_curvature_data(&self) -> Result<MeanCurvatureData> {
        let m = &self.model;
        let kappa = m.kappa().to_vec();
        let b1 = self.basis(1);
        let kappa_b_basic = if b1.cols() == 0 {
            Vec::new()
        } else {
            let g = m.gram(1);
            let small = g.restrict(&b1);
            let rhs = &b1.transpose() * &Matrix::column_vector(g.matrix().mul_vec(&kappa));
            small
                .matrix()
                .solve(&rhs)
                .expect("restricted Gram is invertible")
                .column(0)
        };
        if !self.diff(1).mul_vec(&kappa_b_basic).iter().all(Zero::is_zero) {
            return Err(Error::MeanCurvature("the basic component of κ is not closed".into()));
        }
        let kappa_b = self.to_ambient(1, &kappa_b_basic);

        let p = m.leaf_rank();
        let chi = m.chi().to_vec();
        let dchi = m.differential(p).mul_vec(&chi);
        let wedge = m.multiply(1, &kappa, p, &chi);
        let residual: Vec<Rational> = dchi.iter().zip(&wedge).map(|(a, b)| a + b).collect();
        let mut contracted = residual.clone();
        for x in 0..p {
            contracted = m.contraction(x, p + 1 - x).mul_vec(&contracted);
        }
        if !contracted.iter().all(Zero::is_zero) {
            return Err(Error::MeanCurvature(
                "leafwise contraction of dχ + κ∧χ does not vanish".into(),
            ));
        }
        Ok(MeanCurvatureData {
            kappa,
            kappa_b,
            kappa_b_basic,
            chi,
            rummler_residual: residual,
        })
    }

    /// Whether the Álvarez class `[κ_b]` vanishes (the foliation is taut).
    pub fn is_taut(&self, mc: &MeanCurvatureData) -> bool {
        self.is_exact(1, &mc.kappa_b_basic)
    }
}

impl FoliatedModel {
    pub fn basic_subcomplex(&self) -> Result<BasicComplex> {
        BasicComplex::build(self)
    }

    pub fn mean_curvature(&self) -> Result<MeanCurvatureData> {
        BasicComplex::build(self)?.mean_curvature_data()
    }
}
