//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_traits::Zero;

use super::{ComplexMatrix, DensityMatrix, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending, with eigenvectors in matching columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Real> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: UnitaryMatrix<T>,
}

impl<T: Real> Spectrum<T> {
    /// `V diag(λ) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let v = self.eigenvectors.matrix();
        let n = self.eigenvalues.len();
        ComplexMatrix::from_fn(n, n, |j, k| {
            (0..n).fold(Complex::zero(), |acc, l| {
                acc + v[(j, l)] * v[(k, l)].conj() * self.eigenvalues[l]
            })
        })
    }
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are returned
/// descending and unclipped.
pub fn eig_hermitian_matrix<T: Real>(a: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    if !a.is_square() {
        return Err(Error::Validation(format!(
            "{}x{} matrix is not square",
            a.rows(),
            a.cols()
        )));
    }
    let scale = a.max_abs().max(T::one());
    let dev = a.hermitian_deviation();
    if dev > T::HERMITIAN_TOL * scale {
        return Err(Error::Validation(format!("matrix is not Hermitian (deviation {dev})")));
    }
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |m: &ComplexMatrix<T>| {
        let mut s = T::zero();
        for j in 0..n {
            for k in (j + 1)..n {
                s = s + m[(j, k)].norm_sqr();
            }
        }
        s.sqrt()
    };
    let target = T::EPS * scale;

    for _ in 0..MAX_SWEEPS {
        if off_norm(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|j| m[(j, j)].re).collect();
    order.sort_by(|&x, &y| diag[y].partial_cmp(&diag[x]).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = order.iter().map(|&j| diag[j]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |j, k| v[(j, order[k])]);
    Ok((eigenvalues, vectors))
}

/// Annihilates `m[p][q]` with a unitary acting on indices `p, q`.
fn rotate<T: Real>(m: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let b = m[(p, q)];
    let b_abs = b.norm();
    if b_abs <= T::min_positive_value() {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // phase making the off-diagonal real, then a real Jacobi rotation
    let phase = (b / b_abs).conj();
    let theta = (aqq - app) / (T::lit(2.0) * b_abs);
    let t = {
        let sign = if theta >= T::zero() { T::one() } else { -T::one() };
        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    // G = [[c, s], [-s·phase, c·phase]] acting on (p, q)
    let g = [
        [Complex::new(c, T::zero()), Complex::new(s, T::zero())],
        [phase * (-s), phase * c],
    ];
    let n = m.rows();
    // columns: M <- M G, V <- V G
    for row in 0..n {
        let (mp, mq) = (m[(row, p)], m[(row, q)]);
        m[(row, p)] = mp * g[0][0] + mq * g[1][0];
        m[(row, q)] = mp * g[0][1] + mq * g[1][1];
        let (vp, vq) = (v[(row, p)], v[(row, q)]);
        v[(row, p)] = vp * g[0][0] + vq * g[1][0];
        v[(row, q)] = vp * g[0][1] + vq * g[1][1];
    }
    // rows: M <- G^dagger M
    for col in 0..n {
        let (mp, mq) = (m[(p, col)], m[(q, col)]);
        m[(p, col)] = g[0][0].conj() * mp + g[1][0].conj() * mq;
        m[(q, col)] = g[0][1].conj() * mp + g[1][1].conj() * mq;
    }
    m[(p, q)] = Complex::zero();
    m[(q, p)] = Complex::zero();
    m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
    m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());
}

/// Clips eigenvalues within `PSD_TOL` of `[0, 1]` and renormalizes to unit sum.
pub(crate) fn clip_density_spectrum<T: Real>(eigenvalues: &mut [T]) -> Result<()> {
    for lam in eigenvalues.iter_mut() {
        if *lam < -T::PSD_TOL {
            return Err(Error::Validation(format!(
                "not positive semi-definite (eigenvalue {lam})"
            )));
        }
        if *lam < T::zero() {
            *lam = T::zero();
        } else if *lam > T::one() && *lam <= T::one() + T::PSD_TOL {
            *lam = T::one();
        }
    }
    let total: T = eigenvalues.iter().copied().sum();
    if total > T::zero() {
        for lam in eigenvalues.iter_mut() {
            *lam = *lam / total;
        }
    }
    Ok(())
}

/// Spectral decomposition of a density matrix, with the spectrum clipped to
/// `[0, 1]` and renormalized.
pub fn eig_hermitian<T: Real>(rho: &DensityMatrix<T>) -> Result<Spectrum<T>> {
    let (mut eigenvalues, vectors) = eig_hermitian_matrix(rho.matrix())?;
    clip_density_spectrum(&mut eigenvalues)?;
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: UnitaryMatrix::from_matrix_unchecked(vectors),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    /// closed-form eigenvalues of a 2x2 Hermitian matrix
    fn eig2(a: f64, d: f64, b: Complex<f64>) -> (f64, f64) {
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean + r, mean - r)
    }

    #[test]
    fn diagonal_input_is_returned_as_is() {
        let rho = DensityMatrix::new(ComplexMatrix::from_diagonal(&[1.0, 0.0]), None).unwrap();
        let s = eig_hermitian(&rho).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 0.0]);
        assert_eq!(s.eigenvectors.matrix(), &ComplexMatrix::identity(2));
    }

    #[test]
    fn maximally_mixed_qubit() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2);
        let s = eig_hermitian(&rho).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvalues[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn fourier_rotated_diagonal_qubit() {
        let (a, b) = (0.7, 0.3);
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(0.5, 0.0), c((a - b) / 2.0, 0.0), c((a - b) / 2.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        let (l1, l2) = eig2(0.5, 0.5, c((a - b) / 2.0, 0.0));
        let s = eig_hermitian(&DensityMatrix::new(m, None).unwrap()).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], l1, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], l2, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[0], 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], 0.3, epsilon = 1e-14);
    }

    #[test]
    fn complex_hermitian_matches_closed_form() {
        let b = c(0.3, -0.45);
        let m = ComplexMatrix::new(2, 2, vec![c(1.2, 0.0), b, b.conj(), c(-0.4, 0.0)]).unwrap();
        let (vals, vecs) = eig_hermitian_matrix(&m).unwrap();
        let (l1, l2) = eig2(1.2, -0.4, b);
        assert_abs_diff_eq!(vals[0], l1, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], l2, epsilon = 1e-14);
        assert!(vecs.unitarity_deviation() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(eig_hermitian_matrix(&m), Err(Error::Validation(_))));
    }

    #[test]
    fn clipping_and_rejection() {
        let mut ok = vec![1.0 + 5e-11, -5e-11];
        clip_density_spectrum(&mut ok).unwrap();
        assert_eq!(ok, vec![1.0, 0.0]);
        let mut bad = vec![1.001, -1e-3];
        assert!(clip_density_spectrum(&mut bad).is_err());
    }
}
