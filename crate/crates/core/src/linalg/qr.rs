//! Householder QR for square complex matrices.

use num_traits::{One, Zero};

use super::ComplexMatrix;
use crate::scalar::{Complex, Real};

/// `A = Q R` with `Q` unitary and `R` upper triangular. The diagonal of `R`
/// carries whatever phases the Householder reflections produce.
pub fn qr_decompose<T: Real>(a: &ComplexMatrix<T>) -> (ComplexMatrix<T>, ComplexMatrix<T>) {
    assert!(a.is_square(), "qr_decompose expects a square matrix");
    let n = a.rows();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let two = T::lit(2.0);

    for k in 0..n {
        let x: Vec<Complex<T>> = (k..n).map(|j| r[(j, k)]).collect();
        let x_norm = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if x_norm <= T::min_positive_value() {
            continue;
        }
        let x0_abs = x[0].norm();
        let phase = if x0_abs > T::zero() {
            x[0] / x0_abs
        } else {
            Complex::one()
        };
        let alpha = -phase * x_norm;
        let mut v = x;
        v[0] = v[0] - alpha;
        let v_norm_sqr: T = v.iter().map(|z| z.norm_sqr()).sum();
        if v_norm_sqr <= T::min_positive_value() {
            continue;
        }
        let beta = two / v_norm_sqr;

        // R <- H R on rows k..n
        for col in k..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(Complex::zero(), |acc, (i, vi)| acc + vi.conj() * r[(k + i, col)]);
            let f = dot * beta;
            for (i, vi) in v.iter().enumerate() {
                r[(k + i, col)] = r[(k + i, col)] - *vi * f;
            }
        }
        // Q <- Q H on columns k..n
        for row in 0..n {
            let dot = v
                .iter()
                .enumerate()
                .fold(Complex::zero(), |acc, (i, vi)| acc + q[(row, k + i)] * *vi);
            let f = dot * beta;
            for (i, vi) in v.iter().enumerate() {
                q[(row, k + i)] = q[(row, k + i)] - f * vi.conj();
            }
        }
        for j in (k + 1)..n {
            r[(j, k)] = Complex::zero();
        }
    }
    (q, r)
}

/// `Q · diag(R_kk / |R_kk|)`: the unique QR factor whose `R` has a positive
/// diagonal.
pub fn qr_phase_fixed<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (mut q, r) = qr_decompose(a);
    let n = a.rows();
    for k in 0..n {
        let d = r[(k, k)];
        let m = d.norm();
        if m > T::zero() {
            let ph = d / m;
            for j in 0..n {
                q[(j, k)] = q[(j, k)] * ph;
            }
        }
    }
    q
}
