//! One function per inequality. Each returns an [`InequalityReport`] with the
//! default tolerance of the scalar type; use
//! [`InequalityReport::with_tolerance`] to override it.
//!
//! Throughout, the "Fourier-rotated" tomogram of `(ρ, u)` is the tomogram
//! at `u·F` (see [`fourier_rotated`]), whose measurement basis is mutually
//! unbiased with the columns of `u`.

use super::report::{InequalityReport, Orientation};
use crate::entropy::{conjugate_order, renyi, shannon, shannon_probs, von_neumann, RenyiOrder};
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, qft_matrix, DensityMatrix, UnitaryMatrix};
use crate::scalar::{Complex, Real};
use crate::tomography::{
    basis_overlap_bound, fourier_rotated, fourier_tomogram, joint_tomogram, marginal, measurement_distribution,
    tomogram, Tomogram,
};

fn tol<T: Real>() -> f64 {
    T::INEQUALITY_TOL.as_f64()
}

fn ln_n(n: usize) -> f64 {
    (n as f64).ln()
}

fn pair_entropies<T: Real>(psi: &[Complex<T>], a: &UnitaryMatrix<T>, b: &UnitaryMatrix<T>) -> Result<(f64, f64, f64)> {
    let c = basis_overlap_bound(a, b)?.as_f64();
    let hp = shannon(&measurement_distribution(psi, a)?).value.as_f64();
    let hq = shannon(&measurement_distribution(psi, b)?).value.as_f64();
    Ok((hp, hq, c))
}

/// `H_p + H_q >= -2 ln((1 + c)/2)`.
pub fn check_deutsch<T: Real>(
    psi: &[Complex<T>],
    a: &UnitaryMatrix<T>,
    b: &UnitaryMatrix<T>,
) -> Result<InequalityReport> {
    let (hp, hq, c) = pair_entropies(psi, a, b)?;
    let rhs = -2.0 * ((1.0 + c) / 2.0).ln();
    Ok(
        InequalityReport::new("UU5", hp + hq, rhs, Orientation::GreaterEq, tol::<T>())
            .with_param("dim", psi.len())
            .with_param("c", c),
    )
}

/// `H_p + H_q >= -2 ln c`; equals `ln N` for mutually unbiased bases.
pub fn check_maassen_uffink<T: Real>(
    psi: &[Complex<T>],
    a: &UnitaryMatrix<T>,
    b: &UnitaryMatrix<T>,
) -> Result<InequalityReport> {
    let (hp, hq, c) = pair_entropies(psi, a, b)?;
    let rhs = -2.0 * c.ln();
    Ok(
        InequalityReport::new("UU7", hp + hq, rhs, Orientation::GreaterEq, tol::<T>())
            .with_param("dim", psi.len())
            .with_param("c", c),
    )
}

fn require_parts<T: Real>(rho: &DensityMatrix<T>, parts: usize) -> Result<&[usize]> {
    match rho.subsystem_dims() {
        Some(d) if d.len() == parts => Ok(d),
        Some(d) => Err(Error::Configuration(format!(
            "expected {parts} subsystems, state has {}",
            d.len()
        ))),
        None => Err(Error::Configuration(format!(
            "expected {parts} subsystems, state has no factorization"
        ))),
    }
}

fn h<T: Real>(w: &Tomogram<T>) -> f64 {
    shannon(w).value.as_f64()
}

/// `H_12(u) <= H_1(u) + H_2(u)` for the joint tomogram and its marginals.
pub fn check_subadditivity_tomographic<T: Real>(
    rho12: &DensityMatrix<T>,
    u: &UnitaryMatrix<T>,
) -> Result<InequalityReport> {
    let dims = require_parts(rho12, 2)?.to_vec();
    let w = joint_tomogram(rho12, u)?;
    let h12 = h(&w);
    let h1 = h(&marginal(&w, &[0])?);
    let h2 = h(&marginal(&w, &[1])?);
    Ok(InequalityReport::new("SA-23", h12, h1 + h2, Orientation::LessEq, tol::<T>()).with_param("dims", dims))
}

/// `H_123(u) + H_2(u) <= H_12(u) + H_23(u)`.
pub fn check_strong_subadditivity_tomographic<T: Real>(
    rho123: &DensityMatrix<T>,
    u: &UnitaryMatrix<T>,
) -> Result<InequalityReport> {
    let dims = require_parts(rho123, 3)?.to_vec();
    let w = joint_tomogram(rho123, u)?;
    let w12 = marginal(&w, &[0, 1])?;
    let w23 = marginal(&w, &[1, 2])?;
    let w2 = marginal(&w, &[1])?;
    Ok(InequalityReport::new(
        "SSA-31",
        h(&w) + h(&w2),
        h(&w12) + h(&w23),
        Orientation::LessEq,
        tol::<T>(),
    )
    .with_param("dims", dims))
}

fn s<T: Real>(rho: &DensityMatrix<T>) -> Result<f64> {
    Ok(von_neumann(rho)?.value.as_f64())
}

/// `S_12 <= S_1 + S_2`.
pub fn check_vn_subadditivity<T: Real>(rho12: &DensityMatrix<T>) -> Result<InequalityReport> {
    let dims = require_parts(rho12, 2)?.to_vec();
    let s12 = s(rho12)?;
    let s1 = s(&rho12.partial_trace(&[0])?)?;
    let s2 = s(&rho12.partial_trace(&[1])?)?;
    Ok(InequalityReport::new("SA-27", s12, s1 + s2, Orientation::LessEq, tol::<T>()).with_param("dims", dims))
}

/// `S_123 + S_2 <= S_12 + S_23`.
pub fn check_vn_ssa<T: Real>(rho123: &DensityMatrix<T>) -> Result<InequalityReport> {
    let dims = require_parts(rho123, 3)?.to_vec();
    let s123 = s(rho123)?;
    let s12 = s(&rho123.partial_trace(&[0, 1])?)?;
    let s23 = s(&rho123.partial_trace(&[1, 2])?)?;
    let s2 = s(&rho123.partial_trace(&[1])?)?;
    Ok(InequalityReport::new("SSA-36", s123 + s2, s12 + s23, Orientation::LessEq, tol::<T>()).with_param("dims", dims))
}

/// `R_α(w) + R_β(w_F) >= ln N` with `1/α + 1/β = 2`.
pub fn check_renyi_qft_amplitude<T: Real>(w: &Tomogram<T>, alpha: RenyiOrder<T>) -> Result<InequalityReport> {
    let beta = conjugate_order(alpha)?;
    let wf = fourier_tomogram(w)?;
    let lhs = renyi(w, alpha).value.as_f64() + renyi(&wf, beta).value.as_f64();
    Ok(
        InequalityReport::new("KK2", lhs, ln_n(w.outcomes()), Orientation::GreaterEq, tol::<T>())
            .with_param("dim", w.outcomes())
            .with_param("alpha", alpha.value().as_f64())
            .with_param("beta", beta.value().as_f64()),
    )
}

/// `Tr ρ²`.
fn purity<T: Real>(rho: &DensityMatrix<T>) -> f64 {
    rho.matrix().entries().iter().map(|z| z.norm_sqr()).sum::<T>().as_f64()
}

/// `R_α(u) + R_β(u·F) >= ln N`. Proven for pure states and for `α <= 1`; a
/// mixed state with `α > 1` is flagged `"conjecture": true`.
pub fn check_renyi_qft_rotation<T: Real>(
    rho: &DensityMatrix<T>,
    u: &UnitaryMatrix<T>,
    alpha: RenyiOrder<T>,
) -> Result<InequalityReport> {
    let beta = conjugate_order(alpha)?;
    let w = tomogram(rho, u)?;
    let wf = tomogram(rho, &fourier_rotated(u))?;
    let lhs = renyi(&w, alpha).value.as_f64() + renyi(&wf, beta).value.as_f64();
    let pure = (purity(rho) - 1.0).abs() <= 1e3 * T::PSD_TOL.as_f64();
    let conjecture = alpha.value() > T::one() && !alpha.is_shannon() && !pure;
    Ok(
        InequalityReport::new("CC5", lhs, ln_n(rho.dim()), Orientation::GreaterEq, tol::<T>())
            .with_param("dim", rho.dim())
            .with_param("alpha", alpha.value().as_f64())
            .with_param("beta", beta.value().as_f64())
            .with_param("pure", pure)
            .with_param("conjecture", conjecture),
    )
}

/// The two Shannon forms of the Fourier uncertainty relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShannonQftVariant {
    /// `H(u) + H(u·F) >= ln N`
    Rotation,
    /// `H(u) + H_F(u) >= ln N` with the amplitude transform `w_F`
    Amplitude,
}

pub fn check_shannon_qft<T: Real>(
    rho: &DensityMatrix<T>,
    u: &UnitaryMatrix<T>,
    variant: ShannonQftVariant,
) -> Result<InequalityReport> {
    let w = tomogram(rho, u)?;
    let (name, second) = match variant {
        ShannonQftVariant::Rotation => ("CC6", tomogram(rho, &fourier_rotated(u))?),
        ShannonQftVariant::Amplitude => ("CC6a", fourier_tomogram(&w)?),
    };
    Ok(InequalityReport::new(
        name,
        h(&w) + h(&second),
        ln_n(rho.dim()),
        Orientation::GreaterEq,
        tol::<T>(),
    )
    .with_param("dim", rho.dim()))
}

/// `S_vN + S(u0·F) >= ln N` at the minimizing rotation `u0` (the eigenbasis).
pub fn check_vn_fourier<T: Real>(rho: &DensityMatrix<T>) -> Result<InequalityReport> {
    let spectrum = eig_hermitian(rho)?;
    let svn = shannon_probs(&spectrum.eigenvalues).as_f64();
    let rotated = fourier_rotated(&spectrum.eigenvectors);
    let second = h(&tomogram(rho, &rotated)?);
    Ok(
        InequalityReport::new("CC8", svn + second, ln_n(rho.dim()), Orientation::GreaterEq, tol::<T>())
            .with_param("dim", rho.dim())
            .with_param("u0", "eigenbasis"),
    )
}

/// Column-wise and aggregate entropy inequalities for a unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryEntropyReports {
    /// One `AAA` report per column `k`.
    pub columns: Vec<InequalityReport>,
    /// `BBB`: the sum over columns against `N ln N`.
    pub aggregate: InequalityReport,
}

impl UnitaryEntropyReports {
    pub fn all(&self) -> impl Iterator<Item = &InequalityReport> {
        self.columns.iter().chain(std::iter::once(&self.aggregate))
    }
}

/// `-Σ_j (|u_jk|² ln|u_jk|² + |(Fu)_jk|² ln|(Fu)_jk|²) >= ln N` per column.
pub fn check_unitary_row_entropy<T: Real>(u: &UnitaryMatrix<T>) -> Result<UnitaryEntropyReports> {
    let n = u.dim();
    let f = qft_matrix::<T>(n)?;
    let fu = f.compose(u)?;
    let mut columns = Vec::with_capacity(n);
    let mut total = 0.0;
    for k in 0..n {
        let p: Vec<T> = u.column(k).iter().map(|z| z.norm_sqr()).collect();
        let q: Vec<T> = fu.column(k).iter().map(|z| z.norm_sqr()).collect();
        let lhs = (shannon_probs(&p) + shannon_probs(&q)).as_f64();
        total += lhs;
        columns.push(
            InequalityReport::new("AAA", lhs, ln_n(n), Orientation::GreaterEq, tol::<T>())
                .with_param("dim", n)
                .with_param("column", k),
        );
    }
    let aggregate = InequalityReport::new("BBB", total, n as f64 * ln_n(n), Orientation::GreaterEq, tol::<T>())
        .with_param("dim", n);
    Ok(UnitaryEntropyReports { columns, aggregate })
}

/// Deutsch bound never exceeds the Maassen-Uffink bound:
/// `-2 ln((1+c)/2) <= -2 ln c`.
pub fn check_deutsch_vs_maassen_uffink<T: Real>(
    a: &UnitaryMatrix<T>,
    b: &UnitaryMatrix<T>,
) -> Result<InequalityReport> {
    let c = basis_overlap_bound(a, b)?.as_f64();
    Ok(InequalityReport::new(
        "UU5-UU7",
        -2.0 * ((1.0 + c) / 2.0).ln(),
        -2.0 * c.ln(),
        Orientation::LessEq,
        tol::<T>(),
    )
    .with_param("dim", a.dim())
    .with_param("c", c))
}
