//! Dense exact linear algebra over [`Scalar`] fields.
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! every basis produced here (kernels, row echelon forms) is reproducible.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<F = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: Vec<F>) -> Self {
        let n = v.len();
        Matrix {
            rows: n,
            cols: 1,
            data: v,
        }
    }

    pub fn diagonal(d: Vec<F>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].conj();
            }
        }
        t
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for (j, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                m[(r, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                m[(i, c)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row count");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = F::one() / m[(row, col)].clone();
            for c in col..m.cols {
                let v = m[(row, c)].clone();
                if !v.is_zero() {
                    m[(row, c)] = v * inv.clone();
                }
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let pv = m[(row, c)].clone();
                    if !pv.is_zero() {
                        let cur = m[(r, c)].clone();
                        m[(r, c)] = cur - factor.clone() * pv;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one column per free variable.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -r[(i, f)].clone();
            }
        }
        k
    }

    /// Solves `self * x = b` for every column of `b`; `None` if inconsistent.
    /// When the solution is not unique the free variables are set to zero.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "solve row count");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() || self.rank() != self.rows {
            return None;
        }
        self.solve(&Self::identity(self.rows))
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / pivot.clone();
                for c in col..m.cols {
                    let pv = m[(col, c)].clone();
                    let cur = m[(r, c)].clone();
                    m[(r, c)] = cur - factor.clone() * pv;
                }
            }
        }
        det
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }
}

impl Matrix<Rational> {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::scalar::rat(x)).collect())
                .collect(),
        )
    }

    pub fn to_gaussian(&self) -> Matrix<GaussianRational> {
        self.map(|x| GaussianRational::from_rational(x.clone()))
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Scalar> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "matrix product shapes");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut m[(r, c)], F::zero());
                    m[(r, c)] = cur + a.clone() * b.clone();
                }
            }
        }
        m
    }
}

impl<F: Scalar> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shapes");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shapes");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

/// A Hermitian (for rationals: symmetric) form, such as a Gram matrix.
#[derive(Clone, PartialEq)]
pub struct SymmetricForm<F = Rational> {
    matrix: Matrix<F>,
}

impl<F: Scalar> fmt::Debug for SymmetricForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricForm({:?})", self.matrix)
    }
}

impl<F: Scalar> SymmetricForm<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "form must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.conj_transpose() != matrix {
            return Err(Error::NotSymmetric);
        }
        Ok(SymmetricForm { matrix })
    }

    pub fn identity(n: usize) -> Self {
        SymmetricForm {
            matrix: Matrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Restriction to the span of the columns of `basis`: `Bᴴ G B`.
    pub fn restrict(&self, basis: &Matrix<F>) -> Self {
        SymmetricForm {
            matrix: &(&basis.conj_transpose() * &self.matrix) * basis,
        }
    }
}

impl SymmetricForm<Rational> {
    pub fn is_positive_definite(&self) -> bool {
        let (_, m, z) = sylvester_signature(self);
        m == 0 && z == 0
    }

    pub fn require_positive_definite(&self) -> Result<()> {
        let (p, m, z) = sylvester_signature(self);
        if m == 0 && z == 0 {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite {
                n_plus: p,
                n_minus: m,
                n_zero: z,
            })
        }
    }
}

/// Rank and a basis of the kernel (as columns).
pub fn rank_and_kernel<F: Scalar>(m: &Matrix<F>) -> (usize, Matrix<F>) {
    let kernel = m.kernel();
    (m.cols() - kernel.cols(), kernel)
}

/// The adjoint of `a` between inner product spaces with the given Grams:
/// `⟨a x, y⟩_cod = ⟨x, a* y⟩_dom`, i.e. `a* = G_dom⁻¹ aᴴ G_cod`.
pub fn adjoint_wrt(
    a: &Matrix<Rational>,
    gram_domain: &SymmetricForm<Rational>,
    gram_codomain: &SymmetricForm<Rational>,
) -> Result<Matrix<Rational>> {
    gram_domain.require_positive_definite()?;
    gram_codomain.require_positive_definite()?;
    adjoint_unchecked(a, gram_domain, gram_codomain)
}

/// [`adjoint_wrt`] without the definiteness check, for Grams already validated.
pub fn adjoint_unchecked<F: Scalar>(
    a: &Matrix<F>,
    gram_domain: &SymmetricForm<F>,
    gram_codomain: &SymmetricForm<F>,
) -> Result<Matrix<F>> {
    if a.cols() != gram_domain.dim() || a.rows() != gram_codomain.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator {}x{} against Grams {} and {}",
            a.rows(),
            a.cols(),
            gram_domain.dim(),
            gram_codomain.dim()
        )));
    }
    let rhs = &a.conj_transpose() * gram_codomain.matrix();
    gram_domain
        .matrix()
        .solve(&rhs)
        .ok_or_else(|| Error::Assertion("singular Gram matrix".into()))
}

/// Counts of positive, negative and zero entries of a congruence-diagonal
/// form of `s`, computed by symmetric Gaussian elimination.
pub fn sylvester_signature(s: &SymmetricForm<Rational>) -> (usize, usize, usize) {
    let mut a = s.matrix().clone();
    let n = a.rows();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all remaining diagonal entries vanish: make one nonzero with
                // the congruence e_i -> e_i + e_j
                let pair = alive.iter().copied().find_map(|i| {
                    alive
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[(i, j)].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                for c in 0..n {
                    let v = a[(j, c)].clone();
                    let cur = a[(i, c)].clone();
                    a[(i, c)] = cur + v;
                }
                for r in 0..n {
                    let v = a[(r, j)].clone();
                    let cur = a[(r, i)].clone();
                    a[(r, i)] = cur + v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        alive.retain(|&i| i != p);
        for &r in &alive {
            if a[(r, p)].is_zero() {
                continue;
            }
            let factor = a[(r, p)].clone() / d.clone();
            for &c in &alive {
                let v = a[(p, c)].clone();
                if !v.is_zero() {
                    let cur = a[(r, c)].clone();
                    a[(r, c)] = cur - factor.clone() * v;
                }
            }
            a[(r, p)] = Rational::zero();
        }
        for &c in &alive {
            a[(p, c)] = Rational::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// Orthogonal projection onto the span of the columns of `subspace_basis`
/// with respect to `gram`: `B (Bᴴ G B)⁻¹ Bᴴ G`.
pub fn orthogonal_projection<F: Scalar>(
    subspace_basis: &Matrix<F>,
    gram: &SymmetricForm<F>,
) -> Result<Matrix<F>> {
    let n = gram.dim();
    if subspace_basis.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} rows, Gram has dimension {n}",
            subspace_basis.rows()
        )));
    }
    if subspace_basis.cols() == 0 {
        return Ok(Matrix::zeros(n, n));
    }
    if subspace_basis.rank() != subspace_basis.cols() {
        return Err(Error::DependentColumns);
    }
    let small = gram.restrict(subspace_basis);
    let bh_g = &subspace_basis.conj_transpose() * gram.matrix();
    let coeffs = small
        .matrix()
        .solve(&bh_g)
        .ok_or_else(|| Error::Assertion("restricted Gram is singular".into()))?;
    Ok(subspace_basis * &coeffs)
}

/// Coordinates of the columns of `v` in the basis given by the (independent)
/// columns of `basis`; `None` if some column leaves the span.
pub fn coordinates_in<F: Scalar>(basis: &Matrix<F>, v: &Matrix<F>) -> Option<Matrix<F>> {
    if basis.cols() == 0 {
        return v.is_zero().then(|| Matrix::zeros(0, v.cols()));
    }
    basis.solve(v)
}

/// Whether every column of `v` lies in the column span of `basis`.
pub fn in_span<F: Scalar>(basis: &Matrix<F>, v: &Matrix<F>) -> bool {
    coordinates_in(basis, v).is_some()
}

pub fn one_if<F: Scalar>(b: bool) -> F {
    if b {
        F::one()
    } else {
        F::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};

    fn sym(rows: &[&[i64]]) -> SymmetricForm {
        SymmetricForm::new(Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rank_and_kernel(&Matrix::<Rational>::identity(2));
        assert_eq!(r, 2);
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn zero_map_kernel() {
        let (r, k) = rank_and_kernel(&Matrix::<Rational>::zeros(3, 4));
        assert_eq!(r, 0);
        assert_eq!(k.cols(), 4);
        assert_eq!(k.rank(), 4);
    }

    #[test]
    fn kernel_columns_are_annihilated() {
        let m = Matrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r + k.cols(), 4);
        assert!((&m * &k).is_zero());
        assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn adjoint_examples() {
        let a = Matrix::from_i64(&[&[1, 0]]);
        let dom = SymmetricForm::new(Matrix::diagonal(vec![rat(2), rat(1)])).unwrap();
        let cod = sym(&[&[3]]);
        let adj = adjoint_wrt(&a, &dom, &cod).unwrap();
        assert_eq!(adj, Matrix::from_rows(vec![vec![frac(3, 2)], vec![rat(0)]]));
        assert_eq!(adjoint_wrt(&adj, &cod, &dom).unwrap(), a);

        let b = Matrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        let adj = adjoint_wrt(&b, &SymmetricForm::identity(2), &SymmetricForm::identity(3)).unwrap();
        assert_eq!(adj, b.transpose());

        let g = sym(&[&[2, 1], &[1, 3]]);
        let id = Matrix::identity(2);
        assert_eq!(adjoint_wrt(&id, &g, &g).unwrap(), id);
    }

    #[test]
    fn adjoint_rejects_indefinite_gram() {
        let a = Matrix::from_i64(&[&[1, 0], &[0, 1]]);
        let bad = sym(&[&[1, 0], &[0, -1]]);
        assert!(matches!(
            adjoint_wrt(&a, &bad, &SymmetricForm::identity(2)),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(sylvester_signature(&sym(&[&[1, 0], &[0, -1]])), (1, 1, 0));
        assert_eq!(
            sylvester_signature(&SymmetricForm::new(Matrix::zeros(3, 3)).unwrap()),
            (0, 0, 3)
        );
        assert_eq!(sylvester_signature(&sym(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(
            sylvester_signature(&sym(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])),
            (1, 1, 1)
        );
        assert_eq!(sylvester_signature(&sym(&[&[2, 1], &[1, 2]])), (2, 0, 0));
    }

    #[test]
    fn projection_examples() {
        let g = SymmetricForm::identity(2);
        let p = orthogonal_projection(&Matrix::from_i64(&[&[1], &[1]]), &g).unwrap();
        let half = frac(1, 2);
        assert_eq!(
            p,
            Matrix::from_rows(vec![vec![half.clone(), half.clone()], vec![half.clone(), half]])
        );
        assert_eq!(
            orthogonal_projection(&Matrix::<Rational>::identity(2), &g).unwrap(),
            Matrix::identity(2)
        );
        assert_eq!(
            orthogonal_projection(&Matrix::<Rational>::zeros(2, 0), &g).unwrap(),
            Matrix::zeros(2, 2)
        );
        assert_eq!(
            orthogonal_projection(&Matrix::from_i64(&[&[1, 2], &[1, 2]]), &g),
            Err(Error::DependentColumns)
        );
    }

    #[test]
    fn solve_and_inverse() {
        let a = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert_eq!(a.determinant(), rat(1));
        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&Matrix::from_i64(&[&[1], &[0]])).is_none());
    }
}
