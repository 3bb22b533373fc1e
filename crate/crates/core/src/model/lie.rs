//! Chevalley–Eilenberg models of Lie algebras with a left-invariant foliation.

use num_traits::{One, Zero};

use super::{sparse, FoliatedModel, Ingredients, ModelKind, Sparse};
use crate::error::{Error, Result};
use crate::exterior::{contract, merge, subsets, FramedMetric, MultiIndexForm};
use crate::linalg::Matrix;
use crate::scalar::{sqrt_rational, Rational};

/// `[e_i, e_j] = value · e_k`, 1-based. Each unordered pair is listed once;
/// the opposite bracket follows by antisymmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Rational,
}

impl StructureConstant {
    pub fn new(i: usize, j: usize, k: usize, value: Rational) -> Self {
        StructureConstant { i, j, k, value }
    }
}

/// Dense bracket tensor, 0-based: `c[i][j][k]`.
struct Bracket {
    n: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl Bracket {
    fn new(n: usize, constants: &[StructureConstant]) -> Result<Self> {
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        for sc in constants {
            let in_range = |x: usize| (1..=n).contains(&x);
            if !(in_range(sc.i) && in_range(sc.j) && in_range(sc.k)) {
                return Err(Error::DimensionMismatch(format!(
                    "structure constant [{}, {}, {}] outside frame 1..{n}",
                    sc.i, sc.j, sc.k
                )));
            }
            if sc.i == sc.j {
                return Err(Error::Parse(format!(
                    "bracket [e{0}, e{0}] must vanish",
                    sc.i
                )));
            }
            c[sc.i - 1][sc.j - 1][sc.k - 1] += &sc.value;
            c[sc.j - 1][sc.i - 1][sc.k - 1] -= &sc.value;
        }
        Ok(Bracket { n, c })
    }

    fn apply(&self, u: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, wj) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += ui * wj * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v[i] = Rational::one();
        v
    }

    fn check_jacobi(&self) -> Result<()> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.apply(&self.apply(&ea, &eb), &ec);
                    let t2 = self.apply(&self.apply(&eb, &ec), &ea);
                    let t3 = self.apply(&self.apply(&ec, &ea), &eb);
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Err(Error::Jacobi(a + 1, b + 1, c + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// `d e^k = −Σ_{i<j} c^k_{ij} e^i ∧ e^j`.
    fn coframe_differential(&self, k: usize) -> MultiIndexForm {
        let mut out = MultiIndexForm::zero(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let c = &self.c[i][j][k];
                if !c.is_zero() {
                    let term = MultiIndexForm::monomial(self.n, &[i + 1, j + 1], -c.clone())
                        .expect("indices in range");
                    out = out.add(&term).expect("same frame");
                }
            }
        }
        out
    }
}

fn inner(g: &Matrix, u: &[Rational], w: &[Rational]) -> Rational {
    u.iter()
        .zip(g.mul_vec(w))
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

pub(crate) fn frame_label(idx: &[usize]) -> String {
    if idx.is_empty() {
        "1".to_string()
    } else {
        format!("e{{{}}}", idx.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    }
}

impl FoliatedModel {
    /// The Chevalley–Eilenberg model of the Lie algebra with the given
    /// structure constants, foliated by the span of the frame vectors
    /// `leaf` (1-based) and carrying the left-invariant metric `metric`.
    pub fn from_lie_algebra(
        name: &str,
        constants: &[StructureConstant],
        leaf: &[usize],
        metric: FramedMetric,
    ) -> Result<Self> {
        let n = metric.dim();
        let bracket = Bracket::new(n, constants)?;
        bracket.check_jacobi()?;

        let mut leaf = leaf.to_vec();
        leaf.sort_unstable();
        leaf.dedup();
        if let Some(&bad) = leaf.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::DimensionMismatch(format!("leaf index {bad} outside 1..{n}")));
        }
        for (a, &la) in leaf.iter().enumerate() {
            for &lb in &leaf[a + 1..] {
                let br = bracket.apply(&bracket.unit(la - 1), &bracket.unit(lb - 1));
                let escapes = br
                    .iter()
                    .enumerate()
                    .any(|(k, c)| !c.is_zero() && !leaf.contains(&(k + 1)));
                if escapes {
                    return Err(Error::NonIntegrable(la, lb));
                }
            }
        }

        let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();
        let position = |k: usize, idx: &[usize]| {
            bases[k]
                .binary_search_by(|probe| probe.as_slice().cmp(idx))
                .expect("canonical index tuple")
        };

        let products: Vec<Vec<Vec<Sparse>>> = (0..=n)
            .map(|a| {
                (0..=n)
                    .map(|b| {
                        let mut table = Vec::with_capacity(bases[a].len() * bases[b].len());
                        for ia in &bases[a] {
                            for ib in &bases[b] {
                                let entry = match merge(ia, ib) {
                                    Some((idx, s)) if a + b <= n => {
                                        let c = if s < 0 { -Rational::one() } else { Rational::one() };
                                        vec![(position(a + b, &idx), c)]
                                    }
                                    _ => Vec::new(),
                                };
                                table.push(entry);
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect();

        let coframe_d: Vec<MultiIndexForm> = (0..n).map(|k| bracket.coframe_differential(k)).collect();
        let diff: Vec<Matrix> = (0..=n)
            .map(|k| {
                let cols: Vec<Vec<Rational>> = bases[k]
                    .iter()
                    .map(|idx| {
                        // d(e^{i1} ∧ rest) = de^{i1} ∧ rest − e^{i1} ∧ d(rest), unrolled
                        let mut total = MultiIndexForm::zero(n);
                        for (pos, &i) in idx.iter().enumerate() {
                            let before = MultiIndexForm::monomial(n, &idx[..pos], Rational::one())
                                .expect("in range");
                            let after = MultiIndexForm::monomial(n, &idx[pos + 1..], Rational::one())
                                .expect("in range");
                            let mut term = crate::exterior::wedge(
                                &crate::exterior::wedge(&before, &coframe_d[i - 1]).expect("frame"),
                                &after,
                            )
                            .expect("frame");
                            if pos % 2 == 1 {
                                term = term.scale(&-Rational::one());
                            }
                            total = total.add(&term).expect("frame");
                        }
                        total.to_coords(k + 1)
                    })
                    .collect();
                Matrix::from_columns(bases.get(k + 1).map_or(0, Vec::len), &cols)
            })
            .collect();

        let contractions: Vec<Vec<Matrix>> = leaf
            .iter()
            .map(|&l| {
                (0..=n)
                    .map(|k| {
                        let rows = if k == 0 { 0 } else { bases[k - 1].len() };
                        let cols: Vec<Vec<Rational>> = bases[k]
                            .iter()
                            .map(|idx| {
                                let e = MultiIndexForm::monomial(n, idx, Rational::one()).expect("in range");
                                if k == 0 {
                                    Vec::new()
                                } else {
                                    contract(l, &e).to_coords(k - 1)
                                }
                            })
                            .collect();
                        Matrix::from_columns(rows, &cols)
                    })
                    .collect()
            })
            .collect();

        let grams = (0..=n).map(|k| metric.form_gram(k)).collect();
        let integral = vec![Rational::from_integer(metric.orientation_sign().into())];

        // orthogonalise the leaf frame
        let g = metric.gram().matrix().clone();
        let mut ortho: Vec<Vec<Rational>> = Vec::new();
        for &l in &leaf {
            let mut u = bracket.unit(l - 1);
            for w in &ortho {
                let c = inner(&g, &u, w) / inner(&g, w, w);
                for (x, y) in u.iter_mut().zip(w) {
                    *x -= &c * y;
                }
            }
            ortho.push(u);
        }
        let leaf_det = ortho
            .iter()
            .fold(Rational::one(), |acc, u| acc * inner(&g, u, u));
        let volume_det = g.determinant();
        let transverse_det = &volume_det / &leaf_det;
        let transverse_scale = sqrt_rational(&transverse_det).ok_or_else(|| {
            Error::NotASquare(format!("transverse determinant det G / det G_LL = {transverse_det}"))
        })?;

        let mut chi = MultiIndexForm::one(n);
        for u in &ortho {
            let flat = MultiIndexForm::from_coords(n, 1, &g.mul_vec(u));
            chi = crate::exterior::wedge(&chi, &flat).expect("frame");
        }

        // κ(Z) = Σ ⟨[π_Q Z, u], u⟩ / |u|², with π_Q the g-orthogonal
        // projection onto the complement of the leaf span
        let kappa: Vec<Rational> = (0..n)
            .map(|j| {
                let mut z = bracket.unit(j);
                for w in &ortho {
                    let c = inner(&g, &z, w) / inner(&g, w, w);
                    for (x, y) in z.iter_mut().zip(w) {
                        *x -= &c * y;
                    }
                }
                ortho.iter().fold(Rational::zero(), |acc, u| {
                    acc + inner(&g, &bracket.apply(&z, u), u) / inner(&g, u, u)
                })
            })
            .collect();

        let labels = bases
            .iter()
            .map(|b| b.iter().map(|idx| frame_label(idx)).collect())
            .collect();

        let model = FoliatedModel::assemble(Ingredients {
            name: name.to_string(),
            kind: ModelKind::Lie {
                constants: constants.to_vec(),
                leaf: leaf.clone(),
                metric,
            },
            n,
            labels,
            products,
            diff,
            contractions,
            grams,
            integral,
            kappa,
            chi: chi.to_coords(leaf.len()),
            volume_det,
            leaf_det,
            transverse_scale,
        })?;
        debug_assert!(sparse(model.kappa()).len() <= n);
        Ok(model)
    }

    /// Direct sum of two frame models: brackets, leaves and metrics are
    /// combined blockwise, the second factor's frame follows the first.
    pub fn lie_product(name: &str, a: &FoliatedModel, b: &FoliatedModel) -> Result<Self> {
        let (
            ModelKind::Lie {
                constants: ca,
                leaf: la,
                metric: ma,
            },
            ModelKind::Lie {
                constants: cb,
                leaf: lb,
                metric: mb,
            },
        ) = (a.kind(), b.kind())
        else {
            return Err(Error::axiom("frame model", "products need two frame models"));
        };
        let shift = ma.dim();
        let mut constants = ca.clone();
        constants.extend(
            cb.iter()
                .map(|c| StructureConstant::new(c.i + shift, c.j + shift, c.k + shift, c.value.clone())),
        );
        let mut leaf = la.clone();
        leaf.extend(lb.iter().map(|l| l + shift));
        let gram = crate::linalg::SymmetricForm::new(ma.gram().matrix().direct_sum(mb.gram().matrix()))?;
        let mut orientation = ma.orientation().to_vec();
        orientation.extend(mb.orientation().iter().map(|o| o + shift));
        let metric = FramedMetric::new(gram, orientation)?;
        Self::from_lie_algebra(name, &constants, &leaf, metric)
    }
}
