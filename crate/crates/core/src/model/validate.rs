//! Axiom checks run on every model at construction.

use num_traits::{One, Zero};

use super::{dense, BasicComplex, FoliatedModel, ModelKind};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;

fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg_if(v: Vec<Rational>, flip: bool) -> Vec<Rational> {
    if flip {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

impl FoliatedModel {
    pub(super) fn validate_shapes(&self) -> Result<()> {
        let n = self.n;
        let shape = |what: &str, m: &Matrix, rows: usize, cols: usize| {
            if m.rows() != rows || m.cols() != cols {
                Err(Error::DimensionMismatch(format!(
                    "{what} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )))
            } else {
                Ok(())
            }
        };
        if self.labels.len() != n + 1 || self.diff.len() != n + 1 || self.grams.len() != n + 1 {
            return Err(Error::DimensionMismatch("per-degree data must cover 0..=n".into()));
        }
        for k in 0..=n {
            shape(&format!("d in degree {k}"), &self.diff[k], self.degree_dim(k + 1), self.degree_dim(k))?;
            shape(&format!("Gram in degree {k}"), self.grams[k].matrix(), self.degree_dim(k), self.degree_dim(k))?;
            for (x, c) in self.contractions.iter().enumerate() {
                let rows = if k == 0 { 0 } else { self.degree_dim(k - 1) };
                shape(&format!("contraction {x} in degree {k}"), &c[k], rows, self.degree_dim(k))?;
            }
        }
        let lens = [
            ("integral", self.integral.len(), self.degree_dim(n)),
            ("kappa", self.kappa.len(), self.degree_dim(1)),
            ("chi", self.chi.len(), self.degree_dim(self.p)),
        ];
        for (what, got, want) in lens {
            if got != want {
                return Err(Error::DimensionMismatch(format!("{what} has {got} entries, expected {want}")));
            }
        }
        Ok(())
    }

    pub(super) fn validate(&self) -> Result<()> {
        for g in &self.grams {
            g.require_positive_definite()?;
        }
        self.check_d_squared()?;
        if let ModelKind::Cdga(_) = self.kind {
            self.check_algebra()?;
        }
        self.check_leibniz()?;
        self.check_contractions()?;
        self.check_stokes()?;
        self.check_isometry()?;
        self.check_riemannian()?;
        let basic = BasicComplex::build(self)?;
        basic.mean_curvature_data()?;
        Ok(())
    }

    /// 1-based name of a leaf generator for diagnostics.
    pub fn generator_name(&self, x: usize) -> usize {
        match &self.kind {
            ModelKind::Lie { leaf, .. } => leaf[x],
            ModelKind::Cdga(_) => x + 1,
        }
    }

    fn pair_name(&self, a: usize, i: usize, b: usize, j: usize) -> String {
        format!("({}, {})", self.labels[a][i], self.labels[b][j])
    }

    fn check_d_squared(&self) -> Result<()> {
        for k in 0..self.n {
            if !(&self.diff[k + 1] * &self.diff[k]).is_zero() {
                return Err(Error::axiom("d² = 0", format!("fails on degree {k}")));
            }
        }
        Ok(())
    }

    fn basis_product(&self, a: usize, i: usize, b: usize, j: usize) -> Vec<Rational> {
        if a + b > self.n {
            return Vec::new();
        }
        dense(self.degree_dim(a + b), self.product_of_basis(a, i, b, j))
    }

    fn check_algebra(&self) -> Result<()> {
        let n = self.n;
        for a in 0..=n {
            for b in 0..=n - a {
                for i in 0..self.degree_dim(a) {
                    for j in 0..self.degree_dim(b) {
                        let ab = self.basis_product(a, i, b, j);
                        let ba = neg_if(self.basis_product(b, j, a, i), (a * b) % 2 == 1);
                        if ab != ba {
                            return Err(Error::axiom(
                                "graded commutativity",
                                self.pair_name(a, i, b, j),
                            ));
                        }
                        for c in 0..=n - a - b {
                            for l in 0..self.degree_dim(c) {
                                let left = self.multiply(a + b, &ab, c, &basis_vector(self.degree_dim(c), l));
                                let bc = self.basis_product(b, j, c, l);
                                let right = self.multiply(a, &basis_vector(self.degree_dim(a), i), b + c, &bc);
                                if left != right {
                                    return Err(Error::axiom(
                                        "associativity",
                                        format!(
                                            "({}, {}, {})",
                                            self.labels[a][i], self.labels[b][j], self.labels[c][l]
                                        ),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_leibniz(&self) -> Result<()> {
        let n = self.n;
        for a in 0..=n {
            for b in 0..=n - a {
                for i in 0..self.degree_dim(a) {
                    let ei = basis_vector(self.degree_dim(a), i);
                    let dei = self.diff[a].column(i);
                    for j in 0..self.degree_dim(b) {
                        let ej = basis_vector(self.degree_dim(b), j);
                        let dej = self.diff[b].column(j);
                        let lhs = self.diff[a + b].mul_vec(&self.basis_product(a, i, b, j));
                        let t1 = self.multiply(a + 1, &dei, b, &ej);
                        let t2 = neg_if(self.multiply(a, &ei, b + 1, &dej), a % 2 == 1);
                        if lhs != add(&t1, &t2) {
                            return Err(Error::axiom("Leibniz rule", self.pair_name(a, i, b, j)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_contractions(&self) -> Result<()> {
        let n = self.n;
        for (x, iota) in self.contractions.iter().enumerate() {
            for k in 2..=n {
                if !(&iota[k - 1] * &iota[k]).is_zero() {
                    return Err(Error::axiom("ι² = 0", format!("generator {}", self.generator_name(x))));
                }
                for other in &self.contractions[x + 1..] {
                    let anti = &(&iota[k - 1] * &other[k]) + &(&other[k - 1] * &iota[k]);
                    if !anti.is_zero() {
                        return Err(Error::axiom(
                            "contractions anticommute",
                            format!("generator {} in degree {k}", self.generator_name(x)),
                        ));
                    }
                }
            }
            for a in 0..=n {
                for b in 0..=n - a {
                    if a + b == 0 {
                        continue;
                    }
                    for i in 0..self.degree_dim(a) {
                        for j in 0..self.degree_dim(b) {
                            let lhs = iota[a + b].mul_vec(&self.basis_product(a, i, b, j));
                            let mut rhs = vec![Rational::zero(); self.degree_dim(a + b - 1)];
                            if a > 0 {
                                let t = self.multiply(a - 1, &iota[a].column(i), b, &basis_vector(self.degree_dim(b), j));
                                rhs = add(&rhs, &t);
                            }
                            if b > 0 {
                                let t = self.multiply(a, &basis_vector(self.degree_dim(a), i), b - 1, &iota[b].column(j));
                                rhs = add(&rhs, &neg_if(t, a % 2 == 1));
                            }
                            if lhs != rhs {
                                return Err(Error::axiom(
                                    "ι is an antiderivation",
                                    format!("generator {} on {}", self.generator_name(x), self.pair_name(a, i, b, j)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_stokes(&self) -> Result<()> {
        if self.n == 0 {
            return Ok(());
        }
        let d = &self.diff[self.n - 1];
        let exact_integrals = Matrix::from_rows(vec![self.integral.clone()]);
        if !(&exact_integrals * d).is_zero() {
            return Err(Error::NotUnimodular);
        }
        Ok(())
    }

    /// The Hodge star must be an isometry: `G_{n−k} = P̂ᵀ G_k⁻¹ P̂ / det G`.
    fn check_isometry(&self) -> Result<()> {
        for k in 0..=self.n {
            let p = self.duality_pairing(k);
            let inv = self.grams[k].matrix().inverse().expect("positive definite");
            let lhs = (&(&p.transpose() * &inv) * &p).scale(&(Rational::one() / &self.volume_det));
            if &lhs != self.grams[self.n - k].matrix() {
                return Err(Error::axiom(
                    "Hodge star is an isometry",
                    format!("degree {k} Gram is incompatible with the pairing into degree {}", self.n - k),
                ));
            }
        }
        Ok(())
    }

    /// Transverse 1-forms: the joint kernel of all contractions in degree 1.
    pub(crate) fn transverse_covectors(&self) -> Matrix {
        let d1 = self.degree_dim(1);
        let stacked = self
            .contractions
            .iter()
            .fold(Matrix::zeros(0, d1), |acc, c| acc.vstack(&c[1]));
        stacked.kernel()
    }

    /// Invariance of the transverse metric along every leaf generator `X`:
    /// `L_X = ι_X d` must preserve the transverse covectors and be skew for
    /// their Gram.
    pub fn check_riemannian(&self) -> Result<()> {
        if self.n < 2 {
            return Ok(());
        }
        let t = self.transverse_covectors();
        let h = self.grams[1].restrict(&t);
        for x in 0..self.contractions.len() {
            let lie = &self.contractions[x][2] * &self.diff[1];
            let image = &lie * &t;
            let Some(c) = t.solve(&image) else {
                return Err(Error::NotRiemannian {
                    generator: self.generator_name(x),
                    detail: "Lie derivative does not preserve transverse covectors".into(),
                });
            };
            let skew = &(&c.transpose() * h.matrix()) + &(h.matrix() * &c);
            if !skew.is_zero() {
                return Err(Error::NotRiemannian {
                    generator: self.generator_name(x),
                    detail: "Lie derivative of the transverse metric is nonzero".into(),
                });
            }
        }
        Ok(())
    }

    pub fn is_riemannian(&self) -> bool {
        self.check_riemannian().is_ok()
    }
}
