//! Twisted differentials `d ± θ∧` on the basic complex, their cohomology,
//! codifferentials, Laplacians and harmonic representatives.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{adjoint_unchecked, coordinates_in, orthogonal_projection, Matrix};
use crate::model::{BasicComplex, MeanCurvatureData};
use crate::scalar::Rational;

/// Selects `d + θ∧` or `d − θ∧`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

fn parity(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// A closed basic 1-element, in basic coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistingForm {
    coords: Vec<Rational>,
}

impl TwistingForm {
    pub fn new(b: &BasicComplex, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != b.dim(1) {
            return Err(Error::DimensionMismatch(format!(
                "twisting form has {} coordinates, basic degree 1 has {}",
                coords.len(),
                b.dim(1)
            )));
        }
        if !b.diff(1).mul_vec(&coords).iter().all(Zero::is_zero) {
            return Err(Error::NotClosed);
        }
        Ok(TwistingForm { coords })
    }

    /// From ambient degree-1 coordinates; the element must be basic and closed.
    pub fn from_ambient(b: &BasicComplex, ambient: &[Rational]) -> Result<Self> {
        let coords = b.coords_of(1, ambient).ok_or(Error::NotBasic)?;
        Self::new(b, coords)
    }

    pub fn zero(b: &BasicComplex) -> Self {
        TwistingForm {
            coords: vec![Rational::zero(); b.dim(1)],
        }
    }

    /// `c · κ_b`.
    pub fn kappa_multiple(b: &BasicComplex, mc: &MeanCurvatureData, c: &Rational) -> Self {
        let coords = mc.kappa_b_basic.iter().map(|x| x * c).collect();
        debug_assert_eq!(mc.kappa_b_basic.len(), b.dim(1));
        TwistingForm { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn ambient(&self, b: &BasicComplex) -> Vec<Rational> {
        b.to_ambient(1, &self.coords)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TwistingForm {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        TwistingForm {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }
}

/// Per-degree matrices of `d + s·θ∧` from degree `k` to `k + 1`, `k = 0..=q`.
pub fn twisted_differential(b: &BasicComplex, theta: &TwistingForm, sign: Sign) -> Vec<Matrix> {
    let s = sign.factor();
    (0..=b.codim())
        .map(|k| &b.diff(k) + &b.theta_wedge(theta.coords(), k).scale(&s))
        .collect()
}

fn adjoints(b: &BasicComplex, up: &[Matrix]) -> Vec<Matrix> {
    (0..=b.codim())
        .map(|k| {
            if k == 0 {
                Matrix::zeros(0, b.dim(0))
            } else {
                adjoint_unchecked(&up[k - 1], &b.gram(k - 1), &b.gram(k)).expect("shapes agree")
            }
        })
        .collect()
}

/// `θ⌟` from degree `k` to `k − 1`: the Gram adjoint of `θ∧`.
pub fn theta_contraction(b: &BasicComplex, theta: &TwistingForm) -> Vec<Matrix> {
    let wedge: Vec<Matrix> = (0..=b.codim()).map(|k| b.theta_wedge(theta.coords(), k)).collect();
    adjoints(b, &wedge)
}

/// `δ_b` as the Gram adjoint of `d`, cross-checked against
/// `(−1)^{q(k+1)+1} ∗̄ (d − κ_b∧) ∗̄` in every degree.
pub fn delta_b(b: &BasicComplex, mc: &MeanCurvatureData) -> Result<Vec<Matrix>> {
    let q = b.codim();
    let d: Vec<Matrix> = (0..=q).map(|k| b.diff(k)).collect();
    let adjoint = adjoints(b, &d);
    let kappa = TwistingForm {
        coords: mc.kappa_b_basic.clone(),
    };
    let twisted = twisted_differential(b, &kappa, Sign::Minus);
    for k in 1..=q {
        let formula = (&(b.star(q - k + 1) * &twisted[q - k]) * b.star(k)).scale(&-parity(q * (k + 1)));
        if formula != adjoint[k] {
            return Err(Error::InconsistentCodifferential(k));
        }
    }
    Ok(adjoint)
}

/// `Δ = D*D + DD*` for `D = d + s·θ∧`, with `D*` the Gram adjoint.
pub fn laplacian(b: &BasicComplex, theta: &TwistingForm, sign: Sign) -> Vec<Matrix> {
    let q = b.codim();
    let up = twisted_differential(b, theta, sign);
    let down = adjoints(b, &up);
    (0..=q)
        .map(|k| {
            let mut lap = Matrix::zeros(b.dim(k), b.dim(k));
            if k < q {
                lap = &lap + &(&down[k + 1] * &up[k]);
            }
            if k > 0 {
                lap = &lap + &(&up[k - 1] * &down[k]);
            }
            lap
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub sign: Sign,
    pub theta: TwistingForm,
    pub dims: Vec<usize>,
    /// Rank of the twisted differential leaving each degree.
    pub ranks: Vec<usize>,
    /// Columns span the kernel of the twisted Laplacian in each degree.
    pub harmonic: Vec<Matrix>,
}

impl CohomologyReport {
    /// The harmonic representative of the class of a closed element:
    /// its Gram-orthogonal projection onto the harmonic space.
    pub fn harmonic_representative(&self, b: &BasicComplex, k: usize, closed: &[Rational]) -> Result<Vec<Rational>> {
        let up = twisted_differential(b, &self.theta, self.sign);
        if !up[k].mul_vec(closed).iter().all(Zero::is_zero) {
            return Err(Error::NotClosed);
        }
        Ok(orthogonal_projection(&self.harmonic[k], &b.gram(k))?.mul_vec(closed))
    }

    /// Coordinates of a harmonic element in the harmonic basis.
    pub fn harmonic_coordinates(&self, k: usize, harmonic: &[Rational]) -> Option<Vec<Rational>> {
        coordinates_in(&self.harmonic[k], &Matrix::column_vector(harmonic.to_vec())).map(|c| c.column(0))
    }
}

/// Twisted cohomology dimensions by rank–nullity, cross-checked against the
/// kernels of the twisted Laplacian.
pub fn cohomology(
    b: &BasicComplex,
    theta: &TwistingForm,
    sign: Sign,
    mc: &MeanCurvatureData,
) -> Result<CohomologyReport> {
    delta_b(b, mc)?;
    let q = b.codim();
    let up = twisted_differential(b, theta, sign);
    for k in 0..q {
        if !(&up[k + 1] * &up[k]).is_zero() {
            return Err(Error::Assertion(format!("twisted differential squares to nonzero in degree {k}")));
        }
    }
    let ranks: Vec<usize> = up.iter().map(Matrix::rank).collect();
    let lap = laplacian(b, theta, sign);
    let mut dims = Vec::new();
    let mut harmonic = Vec::new();
    for k in 0..=q {
        let below = if k == 0 { 0 } else { ranks[k - 1] };
        let dim = b.dim(k) - ranks[k] - below;
        let kernel = lap[k].kernel();
        if kernel.cols() != dim {
            return Err(Error::Assertion(format!(
                "Hodge cross-check failed in degree {k}: rank-nullity gives {dim}, harmonic kernel {}",
                kernel.cols()
            )));
        }
        dims.push(dim);
        harmonic.push(kernel);
    }
    Ok(CohomologyReport {
        sign,
        theta: theta.clone(),
        dims,
        ranks,
        harmonic,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    /// `(k, dim H^k_{d−θ}, dim H^{q−k}_{d−(κ_b−θ)})`.
    pub rows: Vec<(usize, usize, usize)>,
}

/// Twisted Poincaré duality `H^k_{d−θ} ≅ H^{q−k}_{d−(κ_b−θ)}`, with the
/// intertwining `∗̄ Δ_θ = Δ_{κ_b−θ} ∗̄` and the harmonic spaces matched by `∗̄`.
pub fn duality_check(b: &BasicComplex, theta: &TwistingForm, mc: &MeanCurvatureData) -> Result<DualityReport> {
    let q = b.codim();
    let kappa = TwistingForm::kappa_multiple(b, mc, &Rational::one());
    let dual = kappa.sub(theta);
    let left = cohomology(b, theta, Sign::Minus, mc)?;
    let right = cohomology(b, &dual, Sign::Minus, mc)?;
    let lap_left = laplacian(b, theta, Sign::Minus);
    let lap_right = laplacian(b, &dual, Sign::Minus);
    let mut rows = Vec::new();
    for k in 0..=q {
        let (l, r) = (left.dims[k], right.dims[q - k]);
        if l != r {
            return Err(Error::Assertion(format!(
                "duality fails in degree {k}: {l} vs {r} in degree {}",
                q - k
            )));
        }
        if (b.star(k) * &lap_left[k]) != (&lap_right[q - k] * b.star(k)) {
            return Err(Error::Assertion(format!("star does not intertwine the Laplacians in degree {k}")));
        }
        let image = b.star(k) * &left.harmonic[k];
        if image.rank() != l || coordinates_in(&right.harmonic[q - k], &image).is_none() {
            return Err(Error::Assertion(format!("star does not match harmonic spaces in degree {k}")));
        }
        rows.push((k, l, r));
    }
    Ok(DualityReport { rows })
}

/// `(dim H⁰_{d−θ}, θ exact)`; the dimension is 1 exactly when `θ` is exact.
pub fn zero_degree_classification(b: &BasicComplex, theta: &TwistingForm) -> (usize, bool) {
    let up = twisted_differential(b, theta, Sign::Minus);
    let dim = b.dim(0) - up[0].rank();
    (dim, b.is_exact(1, theta.coords()))
}

/// Outcome of one operator identity in one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub degree: usize,
    pub holds: bool,
}

pub const IDENTITY_NAMES: [&str; 7] = [
    "star squared = (-1)^{k(q-k)}",
    "theta contraction = (-1)^{q(k+1)} star theta-wedge star",
    "delta_b = (-1)^{q(k+1)+1} star (d - kappa_b wedge) star",
    "(theta contraction) star = (-1)^k star (theta wedge)",
    "star (theta contraction) = (-1)^{k+1} (theta wedge) star",
    "delta_b star = (-1)^{k+1} star (d - kappa_b wedge)",
    "star delta_b = (-1)^k (d - kappa_b wedge) star",
];

/// Evaluates the seven star identities on basic `k`-elements for every `k`.
/// Identities whose two sides land in a zero space are omitted for that degree.
pub fn operator_identities(
    b: &BasicComplex,
    mc: &MeanCurvatureData,
    theta: &TwistingForm,
) -> Result<Vec<IdentityCheck>> {
    let q = b.codim();
    let s = |k: usize| b.star(k);
    let wedge: Vec<Matrix> = (0..=q).map(|k| b.theta_wedge(theta.coords(), k)).collect();
    let contraction = theta_contraction(b, theta);
    let delta = delta_b(b, mc)?;
    let kappa = TwistingForm::kappa_multiple(b, mc, &Rational::one());
    let dk = twisted_differential(b, &kappa, Sign::Minus);
    let mut out = Vec::new();
    let mut push = |i: usize, k: usize, holds: bool| {
        out.push(IdentityCheck {
            identity: IDENTITY_NAMES[i],
            degree: k,
            holds,
        })
    };
    for k in 0..=q {
        let id = Matrix::identity(b.dim(k)).scale(&parity(k * (q - k)));
        push(0, k, (s(q - k) * s(k)) == id);
        if k >= 1 {
            let rhs = (&(s(q - k + 1) * &wedge[q - k]) * s(k)).scale(&parity(q * (k + 1)));
            push(1, k, contraction[k] == rhs);
            let rhs = (&(s(q - k + 1) * &dk[q - k]) * s(k)).scale(&parity(q * (k + 1) + 1));
            push(2, k, delta[k] == rhs);
            let lhs = s(k - 1) * &contraction[k];
            push(4, k, lhs == (&wedge[q - k] * s(k)).scale(&parity(k + 1)));
            let lhs = s(k - 1) * &delta[k];
            push(6, k, lhs == (&dk[q - k] * s(k)).scale(&parity(k)));
        }
        if k < q {
            let lhs = &contraction[q - k] * s(k);
            push(3, k, lhs == (s(k + 1) * &wedge[k]).scale(&parity(k)));
            let lhs = &delta[q - k] * s(k);
            push(5, k, lhs == (s(k + 1) * &dk[k]).scale(&parity(k + 1)));
        }
    }
    Ok(out)
}

/// [`operator_identities`], failing on the first identity that does not hold.
pub fn verify_operator_identities(b: &BasicComplex, mc: &MeanCurvatureData, theta: &TwistingForm) -> Result<()> {
    match operator_identities(b, mc, theta)?.into_iter().find(|c| !c.holds) {
        Some(c) => Err(Error::Assertion(format!("`{}` fails in degree {}", c.identity, c.degree))),
        None => Ok(()),
    }
}

/// Random closed basic 1-forms: small rational combinations of a basis of
/// closed basic 1-elements, drawn from a seeded generator.
pub fn random_closed_thetas(b: &BasicComplex, count: usize, seed: u64) -> Vec<TwistingForm> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let closed = b.closed_one_forms();
    (0..count)
        .map(|_| {
            let weights: Vec<Rational> = (0..closed.cols())
                .map(|_| Rational::new(rng.random_range(-6i64..=6).into(), rng.random_range(1i64..=4).into()))
                .collect();
            TwistingForm {
                coords: closed.mul_vec(&weights),
            }
        })
        .collect()
}
