use num_traits::Zero;
use rand::Rng;

use super::eigen::eig_hermitian_matrix;
use super::{haar_unitary, vec_norm, ComplexMatrix, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::subsystems::{check_dims, Split};

/// Hermitian, positive semi-definite, unit-trace matrix, optionally factored
/// over subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
    subsystem_dims: Option<Vec<usize>>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>, subsystem_dims: Option<Vec<usize>>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Validation(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let herm = matrix.hermitian_deviation();
        if !(herm <= T::HERMITIAN_TOL) {
            return Err(Error::Validation(format!(
                "density matrix is not Hermitian (deviation {herm})"
            )));
        }
        let tr = matrix.trace();
        if !((tr.re - T::one()).abs() <= T::TRACE_TOL && tr.im.abs() <= T::TRACE_TOL) {
            return Err(Error::Validation(format!("trace is {tr}, expected 1")));
        }
        let (eigenvalues, _) = eig_hermitian_matrix(&matrix)?;
        if let Some(&min) = eigenvalues.last() {
            if min < -T::PSD_TOL {
                return Err(Error::Validation(format!(
                    "not positive semi-definite (smallest eigenvalue {min})"
                )));
            }
        }
        if let Some(dims) = &subsystem_dims {
            check_dims(dims, matrix.rows())?;
        }
        Ok(Self { matrix, subsystem_dims })
    }

    /// `|psi><psi|` for a unit vector.
    pub fn pure(psi: &[Complex<T>]) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::InvalidDimension("empty state vector".into()));
        }
        let norm = vec_norm(psi);
        if !((norm - T::one()).abs() <= T::NORM_TOL) {
            return Err(Error::Validation(format!("state vector norm is {norm}, expected 1")));
        }
        Ok(Self {
            matrix: ComplexMatrix::outer(psi).hermitian_part(),
            subsystem_dims: None,
        })
    }

    /// Computational basis state `|index><index|`.
    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidArgument(format!("basis index {index} >= dimension {n}")));
        }
        let mut diag = vec![T::zero(); n];
        diag[index] = T::one();
        Ok(Self {
            matrix: ComplexMatrix::from_diagonal(&diag),
            subsystem_dims: None,
        })
    }

    /// `I / N`.
    pub fn maximally_mixed(n: usize) -> Self {
        let p = T::one() / T::from_usize_lossy(n);
        Self {
            matrix: ComplexMatrix::from_diagonal(&vec![p; n]),
            subsystem_dims: None,
        }
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(probs: &[T]) -> Result<Self> {
        Self::new(ComplexMatrix::from_diagonal(probs), None)
    }

    /// `V diag(λ) V^dagger` for a probability vector `λ`.
    pub fn from_spectrum(eigenvalues: &[T], basis: &UnitaryMatrix<T>) -> Result<Self> {
        if eigenvalues.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: eigenvalues.len(),
            });
        }
        let v = basis.matrix();
        let n = eigenvalues.len();
        let m = ComplexMatrix::from_fn(n, n, |j, k| {
            (0..n).fold(Complex::zero(), |acc, l| {
                acc + v[(j, l)] * v[(k, l)].conj() * eigenvalues[l]
            })
        });
        Self::new(m.hermitian_part(), None)
    }

    /// Random state: flat-simplex spectrum (symmetric Dirichlet, unit
    /// concentration) in a Haar-random eigenbasis.
    pub fn random_mixed<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let spectrum = flat_simplex(n, rng);
        let basis = haar_unitary(n, rng)?;
        Self::from_spectrum(&spectrum, &basis)
    }

    /// Random pure state: first column of a Haar unitary.
    pub fn random_pure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let u: UnitaryMatrix<T> = haar_unitary(n, rng)?;
        Self::pure(&u.column(0))
    }

    /// Attaches a subsystem factorization.
    pub fn with_subsystems(mut self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, self.dim())?;
        self.subsystem_dims = Some(dims);
        Ok(self)
    }

    /// `self ⊗ other`; subsystem lists are concatenated (a state without a
    /// factorization counts as one subsystem).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.subsystem_dims.clone().unwrap_or_else(|| vec![self.dim()]);
        dims.extend(other.subsystem_dims.clone().unwrap_or_else(|| vec![other.dim()]));
        Self {
            matrix: self.matrix.kron(&other.matrix),
            subsystem_dims: Some(dims),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn subsystem_dims(&self) -> Option<&[usize]> {
        self.subsystem_dims.as_deref()
    }

    /// `λ ρ1 + (1 - λ) ρ2`.
    pub fn mix(&self, other: &Self, weight: T) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let a = self.matrix.scale(Complex::new(weight, T::zero()));
        let b = other.matrix.scale(Complex::new(T::one() - weight, T::zero()));
        Self::new(&a + &b, self.subsystem_dims.clone())
    }

    /// If `ρ` is pure (top eigenvalue within `PSD_TOL` of 1), its state vector.
    pub fn pure_state_vector(&self) -> Result<Vec<Complex<T>>> {
        let (vals, vecs) = eig_hermitian_matrix(&self.matrix)?;
        if (vals[0] - T::one()).abs() > T::PSD_TOL {
            return Err(Error::Validation(format!(
                "state is not pure (largest eigenvalue {})",
                vals[0]
            )));
        }
        Ok(vecs.column(0))
    }

    /// Reduced state on the subsystems in `keep` (0-based, any order; the
    /// result uses ascending subsystem order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let dims = self
            .subsystem_dims
            .as_deref()
            .ok_or_else(|| Error::Configuration("partial trace needs subsystem_dims".into()))?;
        let split = Split::new(dims, keep)?;
        let n = self.dim();
        let parts: Vec<(usize, usize)> = (0..n).map(|i| split.split(i)).collect();
        let mut out = ComplexMatrix::zeros(split.kept_dim, split.kept_dim);
        for (i, &(ki, ti)) in parts.iter().enumerate() {
            for (j, &(kj, tj)) in parts.iter().enumerate() {
                if ti == tj {
                    out[(ki, kj)] = out[(ki, kj)] + self.matrix[(i, j)];
                }
            }
        }
        Self::new(out.hermitian_part(), Some(split.kept_dims()))
    }
}

/// Uniform sample from the probability simplex (normalized unit exponentials).
pub fn flat_simplex<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<T> {
    let draws: Vec<T> = (0..n).map(|_| T::sample_exp1(rng)).collect();
    let total: T = draws.iter().copied().sum();
    draws.into_iter().map(|x| x / total).collect()
}
