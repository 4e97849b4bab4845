use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries. Rejects zero dimensions,
    /// a length mismatch, and non-finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension(format!("{rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Validation(format!(
                "non-finite entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_raw(rows, cols, vec![Complex::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |j, k| if j == k { Complex::one() } else { Complex::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for j in 0..rows {
            for k in 0..cols {
                entries.push(f(j, k));
            }
        }
        Self::from_raw(rows, cols, entries)
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |j, k| {
            if j == k {
                Complex::new(diag[j], T::zero())
            } else {
                Complex::zero()
            }
        })
    }

    /// Rank-one projector `|psi><psi|`.
    pub fn outer(psi: &[Complex<T>]) -> Self {
        let n = psi.len();
        Self::from_fn(n, n, |j, k| psi[j] * psi[k].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex<T>> {
        self.entries
    }

    pub fn column(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|j| self[(j, k)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols)).map(|j| self[(j, j)]).collect()
    }

    pub fn trace(&self) -> Complex<T> {
        self.diagonal().into_iter().fold(Complex::zero(), |acc, z| acc + z)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |j, k| self[(k, j)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |j, k| self[(k, j)])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_raw(self.rows, self.cols, self.entries.iter().map(|&z| z * s).collect())
    }

    /// Matrix product; panics on incompatible shapes (use [`Self::try_matmul`]
    /// for untrusted input).
    pub fn matmul(&self, rhs: &Self) -> Self {
        self.try_matmul(rhs).expect("incompatible matrix shapes")
    }

    pub fn try_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for j in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(j, l)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.cols {
                    let b = rhs[(l, k)];
                    out[(j, k)] = out[(j, k)] + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|j| (0..self.cols).fold(Complex::zero(), |acc, k| acc + self[(j, k)] * v[k]))
            .collect()
    }

    /// `self^p` by repeated squaring; square matrices only.
    pub fn pow(&self, mut p: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while p > 0 {
            if p & 1 == 1 {
                acc = acc.matmul(&base);
            }
            base = base.matmul(&base);
            p >>= 1;
        }
        acc
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r2, c2) = (rhs.rows, rhs.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |j, k| {
            self[(j / r2, k / c2)] * rhs[(j % r2, k % c2)]
        })
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.rows != other.rows || self.cols != other.cols {
            return T::infinity();
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// `max |A_jk - conj(A_kj)|`.
    pub fn hermitian_deviation(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut worst = T::zero();
        for j in 0..self.rows {
            for k in j..self.cols {
                worst = worst.max((self[(j, k)] - self[(k, j)].conj()).norm());
            }
        }
        worst
    }

    /// Max entry of `|A^dagger A - I|`.
    pub fn unitarity_deviation(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.rows))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.entries.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// `(A + A^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |j, k| (self[(j, k)] + self[(k, j)].conj()) * half)
    }

    /// Converts the scalar type, e.g. `f64 -> f32`.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix::from_raw(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
                .collect(),
        )
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (j, k): (usize, usize)) -> &Complex<T> {
        &self.entries[j * self.cols + k]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[j * self.cols + k]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix::from_raw(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| *a + *b).collect(),
        )
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix::from_raw(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| *a - *b).collect(),
        )
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// `<a|b> = Σ conj(a_k) b_k`.
pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(matches!(
            ComplexMatrix::<f64>::new(0, 2, vec![]),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn kron_identity_and_projectors() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
        let p = ComplexMatrix::<f64>::from_diagonal(&[1.0, 0.0]);
        assert_eq!(p.kron(&p), ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_trace_is_product_of_traces() {
        // independent oracle: Tr(A ⊗ B) = Σ_j Σ_k A_jj B_kk
        let a = ComplexMatrix::new(2, 2, vec![c(0.3, 0.1), c(-1.0, 2.0), c(0.5, 0.0), c(1.7, -0.4)]).unwrap();
        let b = ComplexMatrix::new(2, 2, vec![c(-0.2, 0.9), c(0.0, 1.0), c(3.0, 0.0), c(0.25, 0.5)]).unwrap();
        let mut oracle = c(0.0, 0.0);
        for j in 0..2 {
            for k in 0..2 {
                oracle += a[(j, j)] * b[(k, k)];
            }
        }
        assert!((a.kron(&b).trace() - oracle).norm() < 1e-14);
        assert!((a.kron(&b).trace() - a.trace() * b.trace()).norm() < 1e-14);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, -1.0)]).unwrap();
        let direct = a.matmul(&a).matmul(&a).matmul(&a).matmul(&a);
        assert!(a.pow(5).max_abs_diff(&direct) < 1e-14);
        assert_eq!(a.pow(0), ComplexMatrix::identity(2));
    }
}
