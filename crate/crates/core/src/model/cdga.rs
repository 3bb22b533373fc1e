//! Explicitly presented models: a finite graded-commutative algebra given by
//! labelled basis elements and multiplication, differential and contraction
//! tables. The first degree-0 element is the unit.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{sparse, FoliatedModel, Ingredients, ModelKind, Sparse};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricForm};
use crate::scalar::Rational;

/// A linear combination of basis labels.
pub type Combination = Vec<(String, Rational)>;

#[derive(Clone, Debug, PartialEq)]
pub struct CdgaData {
    pub name: String,
    /// Top degree.
    pub dim: usize,
    /// Basis labels per degree `0..=dim`.
    pub basis: Vec<Vec<String>>,
    /// `(a, b, a·b)`; products with the unit are implicit, and `b·a` follows
    /// by graded commutativity unless listed separately.
    pub mul: Vec<(String, String, Combination)>,
    /// `(x, dx)`; unlisted elements are closed.
    pub diff: Vec<(String, Combination)>,
    /// One table `(x, ι x)` per leaf generator.
    pub contractions: Vec<Vec<(String, Combination)>>,
    pub kappa: Combination,
    pub chi: Combination,
    /// Values of the integration functional on top-degree basis elements.
    pub integral: Combination,
    /// Gram matrix per degree.
    pub metric: Vec<Matrix>,
}

struct Index {
    pos: BTreeMap<String, (usize, usize)>,
    dims: Vec<usize>,
}

impl Index {
    fn new(basis: &[Vec<String>]) -> Result<Self> {
        let mut pos = BTreeMap::new();
        for (k, labels) in basis.iter().enumerate() {
            for (i, l) in labels.iter().enumerate() {
                if pos.insert(l.clone(), (k, i)).is_some() {
                    return Err(Error::Parse(format!("basis label `{l}` appears twice")));
                }
            }
        }
        Ok(Index {
            pos,
            dims: basis.iter().map(Vec::len).collect(),
        })
    }

    fn locate(&self, label: &str) -> Result<(usize, usize)> {
        self.pos
            .get(label)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown basis label `{label}`")))
    }

    /// Dense coordinates of a combination that must live in degree `k`.
    fn vector(&self, k: usize, comb: &Combination, what: &str) -> Result<Vec<Rational>> {
        let dim = self.dims.get(k).copied().unwrap_or(0);
        let mut v = vec![Rational::zero(); dim];
        for (label, c) in comb {
            let (deg, i) = self.locate(label)?;
            if deg != k {
                return Err(Error::Parse(format!(
                    "{what}: `{label}` has degree {deg}, expected {k}"
                )));
            }
            v[i] += c;
        }
        Ok(v)
    }
}

impl FoliatedModel {
    pub fn from_cdga(data: CdgaData) -> Result<Self> {
        let n = data.dim;
        if data.basis.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "basis lists {} degrees, expected {}",
                data.basis.len(),
                n + 1
            )));
        }
        if data.basis[0].is_empty() {
            return Err(Error::axiom("unit", "degree 0 is empty"));
        }
        let idx = Index::new(&data.basis)?;
        let dims = &idx.dims;

        let mut products: Vec<Vec<Vec<Sparse>>> = (0..=n)
            .map(|a| (0..=n).map(|b| vec![Vec::new(); dims[a] * dims[b]]).collect())
            .collect();
        for b in 0..=n {
            for j in 0..dims[b] {
                products[0][b][j] = vec![(j, Rational::one())];
                products[b][0][j * dims[0]] = vec![(j, Rational::one())];
            }
        }
        let mut explicit = BTreeSet::new();
        for (la, lb, _) in &data.mul {
            explicit.insert((la.clone(), lb.clone()));
        }
        for (la, lb, comb) in &data.mul {
            let (a, i) = idx.locate(la)?;
            let (b, j) = idx.locate(lb)?;
            let what = format!("product {la}·{lb}");
            if a + b > n {
                if !comb.is_empty() {
                    return Err(Error::Parse(format!("{what} exceeds the top degree")));
                }
                continue;
            }
            let v = idx.vector(a + b, comb, &what)?;
            products[a][b][i * dims[b] + j] = sparse(&v);
            if !explicit.contains(&(lb.clone(), la.clone())) {
                let sign = if (a * b) % 2 == 1 { -Rational::one() } else { Rational::one() };
                let swapped: Vec<Rational> = v.iter().map(|c| c * &sign).collect();
                products[b][a][j * dims[a] + i] = sparse(&swapped);
            }
        }

        let mut diff: Vec<Matrix> = (0..=n)
            .map(|k| Matrix::zeros(dims.get(k + 1).copied().unwrap_or(0), dims[k]))
            .collect();
        for (label, comb) in &data.diff {
            let (k, i) = idx.locate(label)?;
            let v = idx.vector(k + 1, comb, &format!("d{label}"))?;
            for (r, c) in v.into_iter().enumerate() {
                diff[k][(r, i)] = c;
            }
        }

        let mut contractions = Vec::new();
        for (g, table) in data.contractions.iter().enumerate() {
            let mut mats: Vec<Matrix> = (0..=n)
                .map(|k| Matrix::zeros(if k == 0 { 0 } else { dims[k - 1] }, dims[k]))
                .collect();
            for (label, comb) in table {
                let (k, i) = idx.locate(label)?;
                if k == 0 {
                    if comb.is_empty() {
                        continue;
                    }
                    return Err(Error::Parse(format!("contraction {g} of degree-0 `{label}`")));
                }
                let v = idx.vector(k - 1, comb, &format!("contraction {g} of {label}"))?;
                for (r, c) in v.into_iter().enumerate() {
                    mats[k][(r, i)] = c;
                }
            }
            contractions.push(mats);
        }
        let p = contractions.len();

        if data.metric.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "metric lists {} degrees, expected {}",
                data.metric.len(),
                n + 1
            )));
        }
        let grams = data
            .metric
            .iter()
            .enumerate()
            .map(|(k, m)| {
                if m.rows() != dims[k] {
                    return Err(Error::DimensionMismatch(format!(
                        "degree-{k} Gram is {}x{}, basis has {} elements",
                        m.rows(),
                        m.cols(),
                        dims[k]
                    )));
                }
                SymmetricForm::new(m.clone())
            })
            .collect::<Result<Vec<_>>>()?;

        let kappa = idx.vector(1, &data.kappa, "kappa")?;
        let chi = idx.vector(p, &data.chi, "chi")?;
        let integral = idx.vector(n, &data.integral, "integral")?;

        FoliatedModel::assemble(Ingredients {
            name: data.name.clone(),
            n,
            labels: data.basis.clone(),
            products,
            diff,
            contractions,
            grams,
            integral,
            kappa,
            chi,
            volume_det: Rational::one(),
            leaf_det: Rational::one(),
            transverse_scale: Rational::one(),
            kind: ModelKind::Cdga(data),
        })
    }
}
