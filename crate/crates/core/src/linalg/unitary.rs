use rand::Rng;

use super::qr::qr_phase_fixed;
use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

/// Square complex matrix with `U^dagger U = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> UnitaryMatrix<T> {
    /// Validates `max |U^dagger U - I| <= UNITARY_TOL`.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Validation(format!(
                "{}x{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.unitarity_deviation();
        if !(dev <= T::UNITARY_TOL) {
            return Err(Error::Validation(format!("matrix is not unitary (deviation {dev})")));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix the caller knows to be unitary.
    pub fn from_matrix_unchecked(matrix: ComplexMatrix<T>) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::identity(n))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix_unchecked(self.matrix.adjoint())
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::from_matrix_unchecked(self.matrix.try_matmul(&rhs.matrix)?))
    }

    /// `self ⊗ rhs`, for local rotations of composite systems.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_matrix_unchecked(self.matrix.kron(&rhs.matrix))
    }

    pub fn column(&self, k: usize) -> Vec<Complex<T>> {
        self.matrix.column(k)
    }

    pub fn unitarity_deviation(&self) -> T {
        self.matrix.unitarity_deviation()
    }

    /// Projects back onto the unitary group with a phase-fixed QR when the
    /// drift exceeds `threshold`.
    pub fn reunitarize(&mut self, threshold: T) {
        if self.unitarity_deviation() > threshold {
            self.matrix = qr_phase_fixed(&self.matrix);
        }
    }
}

/// Quantum Fourier transform `F_jk = exp(2πi jk / N) / √N`.
pub fn qft_matrix<T: Real>(n: usize) -> Result<UnitaryMatrix<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension("QFT dimension must be >= 1".into()));
    }
    let norm = T::one() / T::from_usize_lossy(n).sqrt();
    let step = T::TAU() / T::from_usize_lossy(n);
    // reduce jk mod N before the trig call so large products keep full precision
    let m = ComplexMatrix::from_fn(n, n, |j, k| {
        let angle = step * T::from_usize_lossy((j * k) % n);
        Complex::new(angle.cos() * norm, angle.sin() * norm)
    });
    Ok(UnitaryMatrix::from_matrix_unchecked(m))
}

/// Haar-distributed unitary: Ginibre matrix, QR, then `Q · diag(R_kk/|R_kk|)`.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnitaryMatrix<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension("unitary dimension must be >= 1".into()));
    }
    let ginibre = ginibre(n, rng);
    Ok(UnitaryMatrix::from_matrix_unchecked(qr_phase_fixed(&ginibre)))
}

/// `n x n` matrix of i.i.d. standard complex Gaussians (`E|z|^2 = 1`).
pub fn ginibre<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix<T> {
    let s = T::FRAC_1_SQRT_2();
    ComplexMatrix::from_fn(n, n, |_, _| {
        let re = T::sample_standard_normal(rng);
        let im = T::sample_standard_normal(rng);
        Complex::new(re * s, im * s)
    })
}
