//! Minimization of tomographic entropies over the unitary group.
//!
//! The search moves by right-multiplying `u` with plane rotations on a pair of
//! columns `(j, k)`. Such a step only changes `w_j` and `w_k`, so each 1-D
//! subproblem is a cheap black-box function of the angle, solved by a coarse
//! grid followed by golden-section refinement. Sweeps over all pairs repeat
//! until the improvement stalls. The result carries the quantum entropy of
//! `ρ` as an oracle for the minimum.

use serde::Serialize;

use crate::entropy::{quantum_renyi, renyi_probs, shannon_probs, von_neumann, EntropyKind, EntropyValue, RenyiOrder};
use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, ComplexMatrix, DensityMatrix, UnitaryMatrix};
use crate::rng::task_rng;
use crate::scalar::{Complex, Real};
use crate::tomography::tomogram;

/// Gap below which a result counts as converged.
pub const CONVERGED_GAP: f64 = 1e-6;

const GRID: usize = 16;
const GOLDEN_ITERS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Independent Haar-random starting points.
    pub restarts: usize,
    /// Sweeps over all column pairs per start.
    pub max_iters: usize,
    /// A sweep that improves the objective by less than this ends a start.
    pub step_tol: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_iters: 200,
            step_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizationResult<T: Real> {
    #[serde(skip)]
    pub minimizer: UnitaryMatrix<T>,
    pub value: EntropyValue<T>,
    /// Quantum entropy of `ρ`, the true minimum.
    #[serde(serialize_with = "ser_real")]
    pub oracle_value: T,
    /// `value - oracle_value`.
    #[serde(serialize_with = "ser_real")]
    pub gap: T,
    /// Sweeps used by the winning start.
    pub iterations: usize,
    /// Starts actually run.
    pub restarts: usize,
    pub converged: bool,
}

fn ser_real<T: Real, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::json::serialize_extended_f64(&x.as_f64(), s)
}

/// Minimizes `H(w(ρ, u))` over `u`; the minimum is the von Neumann entropy.
pub fn minimize_shannon<T: Real>(rho: &DensityMatrix<T>, budget: Budget, seed: u64) -> Result<MinimizationResult<T>> {
    let oracle = von_neumann(rho)?.value;
    minimize(rho, budget, seed, oracle, EntropyKind::Shannon, shannon_probs)
}

/// Minimizes `R_q(w(ρ, u))` over `u`; the minimum is the quantum Renyi entropy.
pub fn minimize_renyi<T: Real>(
    rho: &DensityMatrix<T>,
    q: RenyiOrder<T>,
    budget: Budget,
    seed: u64,
) -> Result<MinimizationResult<T>> {
    if q.is_shannon() {
        return minimize_shannon(rho, budget, seed);
    }
    let oracle = quantum_renyi(rho, q)?.value;
    minimize(
        rho,
        budget,
        seed,
        oracle,
        EntropyKind::Renyi(q.value().as_f64()),
        move |p: &[T]| renyi_probs(p, q),
    )
}

struct Run<T: Real> {
    u: UnitaryMatrix<T>,
    value: T,
    iterations: usize,
}

fn minimize<T: Real>(
    rho: &DensityMatrix<T>,
    budget: Budget,
    seed: u64,
    oracle: T,
    kind: EntropyKind,
    objective: impl Fn(&[T]) -> T,
) -> Result<MinimizationResult<T>> {
    if budget.restarts == 0 {
        return Err(Error::InvalidArgument("budget needs at least one restart".into()));
    }
    let n = rho.dim();
    let stop_gap = T::lit(budget.step_tol);
    let converged_gap = T::lit(CONVERGED_GAP);

    // the computational basis is tried first; it is optimal for diagonal states
    let identity = UnitaryMatrix::identity(n);
    let initial = objective(tomogram(rho, &identity)?.probs());
    let mut best = Run {
        u: identity,
        value: initial,
        iterations: 0,
    };
    let mut starts = 0;
    if initial - oracle > stop_gap {
        for r in 0..budget.restarts {
            starts += 1;
            let mut rng = task_rng(seed, r as u64);
            let start = haar_unitary::<T, _>(n, &mut rng)?;
            let run = descend(rho.matrix(), start, budget, oracle, &objective)?;
            if run.value < best.value {
                best = run;
            }
            if best.value - oracle <= stop_gap {
                break;
            }
        }
    }

    let gap = best.value - oracle;
    Ok(MinimizationResult {
        minimizer: best.u,
        value: EntropyValue {
            value: best.value,
            kind,
        },
        oracle_value: oracle,
        gap,
        iterations: best.iterations,
        restarts: starts,
        converged: gap <= converged_gap,
    })
}

fn descend<T: Real>(
    rho: &ComplexMatrix<T>,
    start: UnitaryMatrix<T>,
    budget: Budget,
    oracle: T,
    objective: &impl Fn(&[T]) -> T,
) -> Result<Run<T>> {
    let n = rho.rows();
    let step_tol = T::lit(budget.step_tol);
    let mut u = start.into_matrix();
    let mut w = diagonal_of(rho, &u);
    let mut value = objective(&w);
    let mut iterations = 0;

    while iterations < budget.max_iters && value - oracle > step_tol {
        iterations += 1;
        let before = value;
        for j in 0..n {
            for k in (j + 1)..n {
                value = rotate_pair(rho, &mut u, &mut w, j, k, value, objective);
            }
        }
        let mut unitary = UnitaryMatrix::from_matrix_unchecked(u);
        unitary.reunitarize(T::lit(1e-12).max(T::EPS * T::lit(16.0)));
        u = unitary.into_matrix();
        w = diagonal_of(rho, &u);
        value = objective(&w);
        if before - value < step_tol {
            break;
        }
    }
    Ok(Run {
        u: UnitaryMatrix::from_matrix_unchecked(u),
        value,
        iterations,
    })
}

/// `w_k = Re <u_k| ρ |u_k>`, clipped at zero.
fn diagonal_of<T: Real>(rho: &ComplexMatrix<T>, u: &ComplexMatrix<T>) -> Vec<T> {
    (0..u.cols())
        .map(|k| {
            let col = u.column(k);
            let rc = rho.mul_vec(&col);
            let v: Complex<T> = col.iter().zip(&rc).map(|(a, b)| a.conj() * b).sum();
            v.re.max(T::zero())
        })
        .collect()
}

/// One 2-D step on columns `(j, k)`. Returns the new objective value.
///
/// With `x = <u_j|ρ|u_k>` and phase `φ = -arg x`, the rotation
/// `u_j' = c u_j + s e^{iφ} u_k`, `u_k' = -s e^{-iφ} u_j + c u_k` gives
/// `w_j' = c²a + s²b + 2cs|x|` and `w_k' = s²a + c²b - 2cs|x|`. Aligning the
/// phase maximizes the spread available to the angle, which is all a
/// Schur-concave objective can gain from this pair.
fn rotate_pair<T: Real>(
    rho: &ComplexMatrix<T>,
    u: &mut ComplexMatrix<T>,
    w: &mut [T],
    j: usize,
    k: usize,
    current: T,
    objective: &impl Fn(&[T]) -> T,
) -> T {
    let n = u.rows();
    let cj = u.column(j);
    let ck = u.column(k);
    let rck = rho.mul_vec(&ck);
    let x: Complex<T> = cj.iter().zip(&rck).map(|(a, b)| a.conj() * b).sum();
    let r = x.norm();
    if r <= T::EPS * T::EPS {
        return current;
    }
    let (a, b) = (w[j], w[k]);
    let phase = x.conj() / r; // e^{iφ}

    let mut scratch = w.to_vec();
    let mut f = |theta: T| -> T {
        let (s, c) = theta.sin_cos();
        let cross = T::lit(2.0) * c * s * r;
        scratch[j] = (c * c * a + s * s * b + cross).max(T::zero());
        scratch[k] = (s * s * a + c * c * b - cross).max(T::zero());
        objective(&scratch)
    };

    let quarter = T::FRAC_PI_4();
    let step = T::lit(2.0) * quarter / T::from_usize_lossy(GRID);
    // the grid contains θ = 0 at its midpoint
    let mut best_i = GRID / 2;
    let mut best_val = f(T::zero());
    for i in 0..=GRID {
        let v = f(-quarter + step * T::from_usize_lossy(i));
        if v < best_val {
            best_val = v;
            best_i = i;
        }
    }
    let mut best_theta = -quarter + step * T::from_usize_lossy(best_i);
    let lo = -quarter + step * T::from_usize_lossy(best_i.saturating_sub(1));
    let hi = -quarter + step * T::from_usize_lossy((best_i + 1).min(GRID));
    let (theta, v) = golden_section(&mut f, lo, hi);
    if v < best_val {
        best_val = v;
        best_theta = theta;
    }
    if !(best_val < current) || best_theta == T::zero() {
        return current;
    }

    let (s, c) = best_theta.sin_cos();
    let sp = phase * s;
    let sm = -phase.conj() * s;
    for row in 0..n {
        let uj = u[(row, j)];
        let uk = u[(row, k)];
        u[(row, j)] = uj * c + uk * sp;
        u[(row, k)] = uj * sm + uk * c;
    }
    let (s2, c2, cross) = (s * s, c * c, T::lit(2.0) * c * s * r);
    w[j] = (c2 * a + s2 * b + cross).max(T::zero());
    w[k] = (s2 * a + c2 * b - cross).max(T::zero());
    objective(w)
}

fn golden_section<T: Real>(f: &mut impl FnMut(T) -> T, mut lo: T, mut hi: T) -> (T, T) {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_ITERS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
