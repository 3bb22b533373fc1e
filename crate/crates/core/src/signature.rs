//! The `★` involution on basic forms of even codimension, the basic
//! signature, the middle-degree pairing form and the class pairing.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lichnerowicz::{cohomology, twisted_differential, Sign, TwistingForm};
use crate::linalg::{adjoint_unchecked, coordinates_in, sylvester_signature, Matrix, SymmetricForm};
use crate::model::{BasicComplex, MeanCurvatureData};
use crate::scalar::{frac, GaussianRational, Rational};

type CMatrix = Matrix<GaussianRational>;

/// `★_k = i^{k(k−1)+q/2} ∗̄_k` on basic `k`-elements, for even `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarInvolution {
    q: usize,
    per_degree: Vec<CMatrix>,
}

impl StarInvolution {
    pub fn codim(&self) -> usize {
        self.q
    }

    /// `★` from degree `k` to `q − k`.
    pub fn degree(&self, k: usize) -> &CMatrix {
        &self.per_degree[k]
    }

    /// Power of `i` multiplying `∗̄` in degree `k`, reduced mod 4.
    pub fn phase(q: usize, k: usize) -> usize {
        (k * k.saturating_sub(1) + q / 2) % 4
    }
}

fn gauss(m: &Matrix) -> CMatrix {
    m.to_gaussian()
}

/// `d̃ = d − ½κ_b∧`.
pub fn half_kappa(b: &BasicComplex, mc: &MeanCurvatureData) -> TwistingForm {
    TwistingForm::kappa_multiple(b, mc, &frac(1, 2))
}

fn tilde_operators(b: &BasicComplex, mc: &MeanCurvatureData) -> (Vec<Matrix>, Vec<Matrix>) {
    let q = b.codim();
    let up = twisted_differential(b, &half_kappa(b, mc), Sign::Minus);
    let down = (0..=q)
        .map(|k| {
            if k == 0 {
                Matrix::zeros(0, b.dim(0))
            } else {
                adjoint_unchecked(&up[k - 1], &b.gram(k - 1), &b.gram(k)).expect("shapes agree")
            }
        })
        .collect();
    (up, down)
}

/// Builds `★` and checks `★² = 1`, Gram symmetry, `★d̃ = −δ̃★` and
/// `★δ̃ = −d̃★` in every degree.
pub fn star_involution(b: &BasicComplex, mc: &MeanCurvatureData) -> Result<StarInvolution> {
    let q = b.codim();
    if q % 2 == 1 {
        return Err(Error::OddCodimension(q));
    }
    let per_degree: Vec<CMatrix> = (0..=q)
        .map(|k| {
            let phase = GaussianRational::i_pow(StarInvolution::phase(q, k) as i64);
            gauss(b.star(k)).scale(&phase)
        })
        .collect();
    let grams: Vec<CMatrix> = (0..=q).map(|k| gauss(b.gram(k).matrix())).collect();
    let (up, down) = tilde_operators(b, mc);
    let (up, down): (Vec<CMatrix>, Vec<CMatrix>) = (up.iter().map(gauss).collect(), down.iter().map(gauss).collect());
    let fail = |what: &str, k: usize| Err(Error::Assertion(format!("{what} fails in degree {k}")));
    for k in 0..=q {
        let s = &per_degree[k];
        let back = &per_degree[q - k];
        if (back * s) != Matrix::identity(b.dim(k)) {
            return fail("★² = 1", k);
        }
        if (&s.conj_transpose() * &grams[q - k]) != (&grams[k] * back) {
            return fail("★ is Gram-symmetric", k);
        }
        if k < q && &per_degree[k + 1] * &up[k] != -&(&down[q - k] * s) {
            return fail("★d̃ = −δ̃★", k);
        }
        if k > 0 && &per_degree[k - 1] * &down[k] != -&(&up[q - k] * s) {
            return fail("★δ̃ = −d̃★", k);
        }
    }
    Ok(StarInvolution { q, per_degree })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignatureReport {
    pub q: usize,
    pub ell: usize,
    /// Dimensions of the `±1` eigenspaces of `★` on `ker Δ̃`.
    pub dim_plus: usize,
    pub dim_minus: usize,
    pub sigma: i64,
    /// `A_F` on a harmonic basis of the middle twisted cohomology.
    pub pairing: Matrix,
    /// `(n+, n−, n0)` of `A_F` (of the Hermitian form `i·A_F` when `ℓ` is odd).
    pub pairing_signature: (usize, usize, usize),
}

/// `A_F(α_i, α_j) = ∫ α_i ∧ α_j ∧ χ` on the columns of `basis` (basic
/// coordinates of degree `q/2`).
pub fn pairing_matrix(b: &BasicComplex, basis: &Matrix) -> Matrix {
    let ell = b.codim() / 2;
    let cols = basis.columns();
    let mut m = Matrix::zeros(cols.len(), cols.len());
    for (i, a) in cols.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            m[(i, j)] = b.integrate_with_chi(&b.wedge(ell, a, ell, c));
        }
    }
    m
}

/// Signature of an antisymmetric rational form `A`, read as the Hermitian
/// form `i·A`: half the signature of the real symmetric form `[[0, −A], [A, 0]]`.
fn hermitian_signature_of_skew(a: &Matrix) -> (usize, usize, usize) {
    let n = a.rows();
    let mut big = Matrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            big[(r, n + c)] = -a[(r, c)].clone();
            big[(n + r, c)] = a[(r, c)].clone();
        }
    }
    let (p, m, z) = sylvester_signature(&SymmetricForm::new(big).expect("symmetric by construction"));
    (p / 2, m / 2, z / 2)
}

fn nullity(m: &CMatrix) -> usize {
    m.cols() - m.rank()
}

/// The basic signature from the `★` split of `ker Δ̃`, cross-checked against
/// the signature of `A_F` on the middle harmonic space.
pub fn basic_signature(b: &BasicComplex, mc: &MeanCurvatureData) -> Result<SignatureReport> {
    let star = star_involution(b, mc)?;
    let q = b.codim();
    let ell = q / 2;
    let report = cohomology(b, &half_kappa(b, mc), Sign::Minus, mc)?;
    let offsets: Vec<usize> = report
        .dims
        .iter()
        .scan(0, |acc, d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = report.dims.iter().sum();
    let mut c = CMatrix::zeros(total, total);
    for k in 0..=q {
        let image = star.degree(k) * &gauss(&report.harmonic[k]);
        let coords = coordinates_in(&gauss(&report.harmonic[q - k]), &image)
            .ok_or_else(|| Error::Assertion(format!("★ does not preserve harmonic elements in degree {k}")))?;
        for r in 0..coords.rows() {
            for col in 0..coords.cols() {
                c[(offsets[q - k] + r, offsets[k] + col)] = coords[(r, col)].clone();
            }
        }
    }
    let id = CMatrix::identity(total);
    let dim_plus = nullity(&(&c - &id));
    let dim_minus = nullity(&(&c + &id));
    if dim_plus + dim_minus != total {
        return Err(Error::Assertion("★ is not diagonalisable on harmonic elements".into()));
    }
    let sigma = dim_plus as i64 - dim_minus as i64;

    let pairing = pairing_matrix(b, &report.harmonic[ell]);
    let pairing_signature = if ell.is_multiple_of(2) {
        sylvester_signature(&SymmetricForm::new(pairing.clone())?)
    } else {
        if pairing.transpose() != -&pairing {
            return Err(Error::Assertion("middle pairing is not antisymmetric".into()));
        }
        if dim_plus != dim_minus {
            return Err(Error::Assertion(format!(
                "odd middle degree but ★ eigenspaces have dimensions {dim_plus} and {dim_minus}"
            )));
        }
        hermitian_signature_of_skew(&pairing)
    };
    if pairing_signature.2 != 0 {
        return Err(Error::Assertion("middle pairing is degenerate".into()));
    }
    let from_pairing = pairing_signature.0 as i64 - pairing_signature.1 as i64;
    if from_pairing != sigma && ell.is_multiple_of(2) {
        return Err(Error::Assertion(format!(
            "signature from ★ split ({sigma}) differs from the pairing signature ({from_pairing})"
        )));
    }
    if ell % 2 == 1 && (sigma != 0 || from_pairing != 0) {
        return Err(Error::Assertion("odd middle degree with nonzero signature".into()));
    }
    Ok(SignatureReport {
        q,
        ell,
        dim_plus,
        dim_minus,
        sigma,
        pairing,
        pairing_signature,
    })
}

/// Checks that `A_F` is unchanged when each basis element is moved by a
/// `d̃`-exact term `d̃γ`, for `count` seeded random `γ`.
pub fn verify_pairing_invariance(
    b: &BasicComplex,
    mc: &MeanCurvatureData,
    basis: &Matrix,
    count: usize,
    seed: u64,
) -> Result<()> {
    use rand::{Rng, SeedableRng};
    let ell = b.codim() / 2;
    if ell == 0 || basis.cols() == 0 {
        return Ok(());
    }
    let up = twisted_differential(b, &half_kappa(b, mc), Sign::Minus);
    let reference = pairing_matrix(b, basis);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |len: usize| -> Vec<Rational> {
        (0..len)
            .map(|_| Rational::new(rng.random_range(-5i64..=5).into(), rng.random_range(1i64..=3).into()))
            .collect()
    };
    for round in 0..count {
        let cols: Vec<Vec<Rational>> = basis
            .columns()
            .into_iter()
            .map(|col| {
                let gamma = draw(b.dim(ell - 1));
                let exact = up[ell - 1].mul_vec(&gamma);
                col.iter().zip(exact).map(|(x, e)| x + e).collect()
            })
            .collect();
        let moved = Matrix::from_columns(basis.rows(), &cols);
        if pairing_matrix(b, &moved) != reference {
            return Err(Error::Assertion(format!(
                "pairing changes under exact perturbation {round} (seed {seed})"
            )));
        }
    }
    Ok(())
}

/// The pairing of twisted classes of degrees `r` and `s` into `H_d^{q−r−s}`:
/// `α ∧ β` is `(d − κ_b∧)`-closed; its `Δ_{κ_b}`-harmonic representative is
/// sent by `∗̄` to a `d`-closed element, returned in basic coordinates.
pub fn class_pairing(
    b: &BasicComplex,
    mc: &MeanCurvatureData,
    r: usize,
    alpha: &[Rational],
    s: usize,
    beta: &[Rational],
) -> Result<Vec<Rational>> {
    let q = b.codim();
    if r + s > q {
        return Err(Error::DimensionMismatch(format!("degrees {r} + {s} exceed {q}")));
    }
    let up = twisted_differential(b, &half_kappa(b, mc), Sign::Minus);
    for (deg, x) in [(r, alpha), (s, beta)] {
        if !up[deg].mul_vec(x).iter().all(Zero::is_zero) {
            return Err(Error::NotClosed);
        }
    }
    let kappa = TwistingForm::kappa_multiple(b, mc, &Rational::one());
    let product = b.wedge(r, alpha, s, beta);
    let report = cohomology(b, &kappa, Sign::Minus, mc)?;
    let harmonic = report
        .harmonic_representative(b, r + s, &product)
        .map_err(|_| Error::Assertion("α ∧ β is not (d − κ_b∧)-closed".into()))?;
    let out = b.star(r + s).mul_vec(&harmonic);
    if !b.diff(q - r - s).mul_vec(&out).iter().all(Zero::is_zero) {
        return Err(Error::Assertion("star of the harmonic product is not closed".into()));
    }
    Ok(out)
}
