//! Constant-coefficient exterior algebra over an ordered coframe `e^1..e^n`.
//!
//! Indices are 1-based throughout, matching the `e{i,j}` text syntax.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricForm};
use crate::scalar::{sqrt_rational, Rational};

/// All strictly increasing `k`-tuples from `1..=n`, in lexicographic order.
/// This is the ambient basis ordering of degree `k` in frame models.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1..=n).combinations(k).collect()
}

/// Parity of a sequence of distinct integers: +1 for an even number of
/// inversions, -1 for odd.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let inversions = seq
        .iter()
        .enumerate()
        .map(|(i, a)| seq[i + 1..].iter().filter(|b| *b < a).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(x: Rational, s: i32) -> Rational {
    if s < 0 {
        -x
    } else {
        x
    }
}

/// Concatenates two increasing tuples, returning the sorted union with the
/// sign of the sorting permutation, or `None` if they share an index.
pub(crate) fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut sign = 1;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining a's
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

/// A differential form with constant coefficients, stored as a sparse sum of
/// canonical monomials `c * e^{i1..ik}` with `i1 < .. < ik`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiIndexForm {
    n: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl MultiIndexForm {
    pub fn zero(n: usize) -> Self {
        MultiIndexForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, &[], Rational::one()).expect("empty index tuple")
    }

    /// `coef * e^{i1} ∧ .. ∧ e^{ik}` for indices in any order; repeated
    /// indices give zero.
    pub fn monomial(n: usize, indices: &[usize], coef: Rational) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::DimensionMismatch(format!(
                "index {bad} outside frame 1..{n}"
            )));
        }
        let mut form = Self::zero(n);
        if indices.iter().all_unique() {
            let sign = permutation_sign(indices);
            let mut sorted = indices.to_vec();
            sorted.sort_unstable();
            form.add_term(sorted, signed(coef, sign));
        }
        Ok(form)
    }

    /// The coframe element `e^i`.
    pub fn basis(n: usize, i: usize) -> Self {
        Self::monomial(n, &[i], Rational::one()).expect("index in range")
    }

    pub fn frame_size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        self.terms.get(indices).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all terms; `Ok(None)` for the zero form.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut degrees = self.terms.keys().map(Vec::len).dedup();
        let first = degrees.next();
        if degrees.next().is_some() {
            return Err(Error::Inhomogeneous);
        }
        Ok(first)
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn components(&self) -> BTreeMap<usize, MultiIndexForm> {
        let mut out: BTreeMap<usize, MultiIndexForm> = BTreeMap::new();
        for (k, v) in &self.terms {
            out.entry(k.len())
                .or_insert_with(|| Self::zero(self.n))
                .add_term(k.clone(), v.clone());
        }
        out
    }

    fn add_term(&mut self, key: Vec<usize>, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    fn check_frame(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::FrameMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Coordinates of the degree-`k` part in the lexicographic basis of
    /// [`subsets`]`(n, k)`.
    pub fn to_coords(&self, k: usize) -> Vec<Rational> {
        subsets(self.n, k)
            .iter()
            .map(|s| self.coefficient(s))
            .collect()
    }

    pub fn from_coords(n: usize, k: usize, coords: &[Rational]) -> Self {
        let mut out = Self::zero(n);
        for (s, c) in subsets(n, k).into_iter().zip(coords) {
            out.add_term(s, c.clone());
        }
        out
    }
}

impl fmt::Debug for MultiIndexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndexForm {
    /// Renders `c * e{i,j} + ...`; the empty tuple is a bare constant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (k, v)) in self.terms.iter().enumerate() {
            let magnitude = if pos > 0 && v.is_negative() { -v.clone() } else { v.clone() };
            let body = if k.is_empty() {
                magnitude.to_string()
            } else {
                format!("{magnitude} * e{{{}}}", k.iter().join(","))
            };
            match (pos, v.is_negative()) {
                (0, _) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

pub fn wedge(a: &MultiIndexForm, b: &MultiIndexForm) -> Result<MultiIndexForm> {
    a.check_frame(b)?;
    let mut out = MultiIndexForm::zero(a.n);
    for (ka, va) in &a.terms {
        for (kb, vb) in &b.terms {
            if let Some((k, s)) = merge(ka, kb) {
                out.add_term(k, signed(va * vb, s));
            }
        }
    }
    Ok(out)
}

/// Interior product with the frame vector `e_x`.
pub fn contract(x_index: usize, a: &MultiIndexForm) -> MultiIndexForm {
    let mut out = MultiIndexForm::zero(a.n);
    for (k, v) in &a.terms {
        if let Some(pos) = k.iter().position(|&i| i == x_index) {
            let mut rest = k.clone();
            rest.remove(pos);
            out.add_term(rest, signed(v.clone(), if pos % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

/// A constant metric on the frame together with an orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct FramedMetric {
    gram: SymmetricForm,
    orientation: Vec<usize>,
}

impl FramedMetric {
    /// `gram[i][j] = ⟨e_i, e_j⟩` on frame vectors; `orientation` is a
    /// permutation of `1..=n` naming a positively oriented frame ordering.
    pub fn new(gram: SymmetricForm, orientation: Vec<usize>) -> Result<Self> {
        gram.require_positive_definite()?;
        let n = gram.dim();
        let mut sorted = orientation.clone();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::DimensionMismatch(format!(
                "orientation {orientation:?} is not a permutation of 1..{n}"
            )));
        }
        Ok(FramedMetric { gram, orientation })
    }

    pub fn orthonormal(n: usize) -> Self {
        FramedMetric {
            gram: SymmetricForm::identity(n),
            orientation: (1..=n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &SymmetricForm {
        &self.gram
    }

    pub fn orientation(&self) -> &[usize] {
        &self.orientation
    }

    pub fn orientation_sign(&self) -> i32 {
        permutation_sign(&self.orientation)
    }

    /// The same metric with the opposite orientation (first two entries swapped).
    pub fn reversed(&self) -> Self {
        let mut orientation = self.orientation.clone();
        if orientation.len() >= 2 {
            orientation.swap(0, 1);
        }
        FramedMetric {
            gram: self.gram.clone(),
            orientation,
        }
    }

    /// Gram matrix on covectors `⟨e^i, e^j⟩`, the inverse of the frame Gram.
    pub fn covector_gram(&self) -> Matrix {
        self.gram
            .matrix()
            .inverse()
            .expect("positive definite Gram is invertible")
    }

    /// Induced inner product on `k`-forms in the [`subsets`] basis:
    /// `⟨e^I, e^J⟩ = det((G⁻¹)_{I,J})`.
    pub fn form_gram(&self, k: usize) -> SymmetricForm {
        form_gram_from_covector(&self.covector_gram(), k)
    }

    /// Coefficient of the Riemannian volume form on `e^{1..n}`.
    pub fn volume_coefficient(&self) -> Result<Rational> {
        let det = self.gram.matrix().determinant();
        let root = sqrt_rational(&det).ok_or_else(|| Error::NotASquare(format!("det G = {det}")))?;
        Ok(signed(root, self.orientation_sign()))
    }

    pub fn inner(&self, a: &MultiIndexForm, b: &MultiIndexForm) -> Result<Rational> {
        a.check_frame(b)?;
        let inv = self.covector_gram();
        let mut total = Rational::zero();
        for (ka, va) in &a.terms {
            for (kb, vb) in &b.terms {
                if ka.len() == kb.len() {
                    let minor = inv.select_rows(&zero_based(ka)).select_columns(&zero_based(kb));
                    total += va * vb * minor.determinant();
                }
            }
        }
        Ok(total)
    }
}

fn zero_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i - 1).collect()
}

pub(crate) fn form_gram_from_covector(inv: &Matrix, k: usize) -> SymmetricForm {
    let n = inv.rows();
    let basis = subsets(n, k);
    let mut g = Matrix::zeros(basis.len(), basis.len());
    for (a, ia) in basis.iter().enumerate() {
        let rows = inv.select_rows(&zero_based(ia));
        for (b, ib) in basis.iter().enumerate().skip(a) {
            let d = rows.select_columns(&zero_based(ib)).determinant();
            g[(b, a)] = d.clone();
            g[(a, b)] = d;
        }
    }
    SymmetricForm::new(g).expect("minors of a symmetric matrix form a symmetric matrix")
}

/// The Hodge star, characterised by `a ∧ ∗b = ⟨a, b⟩ vol_g` for all `a` of
/// the degree of `b`. Requires `det G` to be a rational square.
pub fn hodge_star(a: &MultiIndexForm, m: &FramedMetric) -> Result<MultiIndexForm> {
    let n = m.dim();
    if a.n != n {
        return Err(Error::FrameMismatch(a.n, n));
    }
    let vol = m.volume_coefficient()?;
    let full: Vec<usize> = (1..=n).collect();
    let mut out = MultiIndexForm::zero(n);
    for (k, part) in a.components() {
        let gram = m.form_gram(k);
        let lhs_basis = subsets(n, k);
        let rhs = gram.matrix().mul_vec(&part.to_coords(k));
        // e^I ∧ e^{I^c} = ±vol, so the system is a signed permutation
        for (i, idx) in lhs_basis.iter().enumerate() {
            let comp: Vec<usize> = full.iter().copied().filter(|j| !idx.contains(j)).collect();
            let (_, s) = merge(idx, &comp).expect("complement is disjoint");
            let c = signed(&rhs[i] * &vol, s);
            out.add_term(comp, c);
        }
    }
    Ok(out)
}

/// `∗̄γ = (−1)^{p(q−k)} ∗(γ ∧ χ)` for a homogeneous form `γ` of degree `k`.
pub fn transversal_star(
    g: &MultiIndexForm,
    m: &FramedMetric,
    chi: &MultiIndexForm,
    p: usize,
    q: usize,
) -> Result<MultiIndexForm> {
    let Some(k) = g.degree()? else {
        return Ok(MultiIndexForm::zero(g.n));
    };
    if k > q {
        return Err(Error::DimensionMismatch(format!("degree {k} exceeds codimension {q}")));
    }
    let star = hodge_star(&wedge(g, chi)?, m)?;
    Ok(if (p * (q - k)) % 2 == 1 {
        star.scale(&-Rational::one())
    } else {
        star
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};

    fn e(n: usize, idx: &[usize]) -> MultiIndexForm {
        MultiIndexForm::monomial(n, idx, rat(1)).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&e(2, &[1]), &e(2, &[2])).unwrap(), e(2, &[1, 2]));
        assert!(wedge(&e(2, &[1]), &e(2, &[1])).unwrap().is_zero());
        let a = e(2, &[1]).add(&e(2, &[2])).unwrap();
        let b = e(2, &[1]).add(&e(2, &[2]).scale(&rat(-1))).unwrap();
        assert_eq!(wedge(&a, &b).unwrap(), e(2, &[1, 2]).scale(&rat(-2)));
        assert_eq!(wedge(&e(2, &[1]), &e(3, &[1])), Err(Error::FrameMismatch(2, 3)));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract(1, &e(3, &[1, 2])), e(3, &[2]));
        assert!(contract(3, &e(3, &[1, 2])).is_zero());
        let a = e(3, &[1, 2]).add(&e(3, &[2, 3]).scale(&rat(2))).unwrap();
        let expected = e(3, &[1]).scale(&rat(-1)).add(&e(3, &[3]).scale(&rat(2))).unwrap();
        assert_eq!(contract(2, &a), expected);
    }

    #[test]
    fn monomial_sorts_with_sign() {
        assert_eq!(
            MultiIndexForm::monomial(3, &[2, 1], rat(1)).unwrap(),
            e(3, &[1, 2]).scale(&rat(-1))
        );
        assert!(MultiIndexForm::monomial(3, &[2, 2], rat(1)).unwrap().is_zero());
        assert!(MultiIndexForm::monomial(3, &[4], rat(1)).is_err());
    }

    #[test]
    fn star_orthonormal() {
        let m = FramedMetric::orthonormal(2);
        assert_eq!(hodge_star(&e(2, &[1]), &m).unwrap(), e(2, &[2]));
        assert_eq!(hodge_star(&MultiIndexForm::one(2), &m).unwrap(), e(2, &[1, 2]));
        assert_eq!(hodge_star(&e(2, &[2]), &m).unwrap(), e(2, &[1]).scale(&rat(-1)));
    }

    #[test]
    fn star_scaled_frame() {
        let g = SymmetricForm::new(Matrix::diagonal(vec![rat(4), rat(1), rat(1)])).unwrap();
        let m = FramedMetric::new(g, vec![1, 2, 3]).unwrap();
        // |e^1|^2 = 1/4 and vol = 2 e^{123}
        let s = hodge_star(&e(3, &[1]), &m).unwrap();
        assert_eq!(s, e(3, &[2, 3]).scale(&frac(1, 2)));
        let lhs = wedge(&e(3, &[1]), &s).unwrap();
        assert_eq!(lhs, e(3, &[1, 2, 3]).scale(&(frac(1, 4) * rat(2))));
    }

    #[test]
    fn reversed_orientation_negates_star() {
        let m = FramedMetric::orthonormal(3);
        let a = e(3, &[1]);
        assert_eq!(
            hodge_star(&a, &m.reversed()).unwrap(),
            hodge_star(&a, &m).unwrap().scale(&rat(-1))
        );
    }

    #[test]
    fn transversal_star_examples() {
        let m = FramedMetric::orthonormal(3);
        let chi = e(3, &[1]);
        assert_eq!(transversal_star(&e(3, &[2]), &m, &chi, 1, 2).unwrap(), e(3, &[3]));
        assert_eq!(
            transversal_star(&e(3, &[3]), &m, &chi, 1, 2).unwrap(),
            e(3, &[2]).scale(&rat(-1))
        );
        let m2 = FramedMetric::orthonormal(2);
        let one = MultiIndexForm::one(2);
        assert_eq!(
            transversal_star(&e(2, &[1]), &m2, &one, 0, 2).unwrap(),
            hodge_star(&e(2, &[1]), &m2).unwrap()
        );
        let mixed = e(3, &[2]).add(&e(3, &[2, 3])).unwrap();
        assert_eq!(transversal_star(&mixed, &m, &chi, 1, 2), Err(Error::Inhomogeneous));
    }

    #[test]
    fn display() {
        let a = e(3, &[1, 2]).scale(&frac(1, 2)).add(&e(3, &[3]).scale(&rat(-2))).unwrap();
        assert_eq!(a.to_string(), "1/2 * e{1,2} - 2 * e{3}");
        assert_eq!(MultiIndexForm::zero(2).to_string(), "0");
    }
}
