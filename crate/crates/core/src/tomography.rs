//! Unitary spin tomograms `w(m, u) = <m| u^dagger ρ u |m>` and derived
//! distributions.
//!
//! Spin projections `m = -j..j` are stored at indices `k = m + j`, so all
//! vectors here are indexed `0..N`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, qft_matrix, vec_norm, DensityMatrix, UnitaryMatrix};
use crate::scalar::{Complex, Real};
use crate::subsystems::{check_dims, Split};

/// Probability vector over measurement outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram<T: Real> {
    probs: Vec<T>,
    subsystem_dims: Option<Vec<usize>>,
    rotation_label: Option<String>,
}

impl<T: Real> Tomogram<T> {
    /// Validates and normalizes a probability vector. Entries in
    /// `[-PROB_NEG_TOL, 0)` are clipped to zero and the vector renormalized.
    pub fn new(mut probs: Vec<T>, subsystem_dims: Option<Vec<usize>>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDimension("tomogram needs at least one outcome".into()));
        }
        let mut clipped = false;
        for (k, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::Validation(format!("probability {k} is not finite")));
            }
            if *p < -T::PROB_NEG_TOL {
                return Err(Error::Validation(format!("probability {k} is negative ({p})")));
            }
            if *p < T::zero() {
                *p = T::zero();
                clipped = true;
            }
        }
        let total: T = probs.iter().copied().sum();
        if !((total - T::one()).abs() <= T::NORM_TOL) {
            return Err(Error::Validation(format!("probabilities sum to {total}, expected 1")));
        }
        if clipped {
            for p in probs.iter_mut() {
                *p = *p / total;
            }
        }
        if let Some(dims) = &subsystem_dims {
            check_dims(dims, probs.len())?;
        }
        Ok(Self {
            probs,
            subsystem_dims,
            rotation_label: None,
        })
    }

    pub fn uniform(n: usize) -> Self {
        let p = T::one() / T::from_usize_lossy(n);
        Self {
            probs: vec![p; n],
            subsystem_dims: None,
            rotation_label: None,
        }
    }

    /// Point mass at `index`.
    pub fn delta(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidArgument(format!("index {index} >= {n}")));
        }
        let mut probs = vec![T::zero(); n];
        probs[index] = T::one();
        Self::new(probs, None)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.rotation_label = Some(label.into());
        self
    }

    pub fn with_subsystems(mut self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, self.outcomes())?;
        self.subsystem_dims = Some(dims);
        Ok(self)
    }

    #[inline]
    pub fn outcomes(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn subsystem_dims(&self) -> Option<&[usize]> {
        self.subsystem_dims.as_deref()
    }

    pub fn rotation_label(&self) -> Option<&str> {
        self.rotation_label.as_deref()
    }

    /// Largest entrywise difference; infinite on length mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.outcomes() != other.outcomes() {
            return T::infinity();
        }
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    /// Outer product `w1 ⊗ w2` with concatenated factorization.
    pub fn product(&self, other: &Self) -> Self {
        let probs = self
            .probs
            .iter()
            .flat_map(|&a| other.probs.iter().map(move |&b| a * b))
            .collect();
        let mut dims = self.subsystem_dims.clone().unwrap_or_else(|| vec![self.outcomes()]);
        dims.extend(other.subsystem_dims.clone().unwrap_or_else(|| vec![other.outcomes()]));
        Self {
            probs,
            subsystem_dims: Some(dims),
            rotation_label: None,
        }
    }

    pub fn to_file(&self) -> TomogramFile {
        TomogramFile {
            outcomes: self.outcomes(),
            probs: self.probs.iter().map(|p| p.as_f64()).collect(),
            subsystem_dims: self.subsystem_dims.clone(),
        }
    }
}

/// JSON form: `{"outcomes": N, "probs": [...], "subsystem_dims": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomogramFile {
    pub outcomes: usize,
    pub probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsystem_dims: Option<Vec<usize>>,
}

impl TomogramFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_tomogram<T: Real>(&self) -> Result<Tomogram<T>> {
        if self.outcomes != self.probs.len() {
            return Err(Error::Validation(format!(
                "outcomes = {} but probs has {} entries",
                self.outcomes,
                self.probs.len()
            )));
        }
        let probs = self
            .probs
            .iter()
            .map(|&p| T::from_f64(p).ok_or_else(|| Error::Parse(format!("bad probability {p}"))))
            .collect::<Result<Vec<_>>>()?;
        Tomogram::new(probs, self.subsystem_dims.clone())
    }
}

fn check_same_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `w_k = (u^dagger ρ u)_kk`.
pub fn tomogram<T: Real>(rho: &DensityMatrix<T>, u: &UnitaryMatrix<T>) -> Result<Tomogram<T>> {
    check_same_dim(rho.dim(), u.dim())?;
    let n = rho.dim();
    let r = rho.matrix();
    let m = u.matrix();
    let mut probs = Vec::with_capacity(n);
    for k in 0..n {
        let col = m.column(k);
        let rho_col = r.mul_vec(&col);
        let w = inner(&col, &rho_col);
        if w.im.abs() > T::NORM_TOL {
            return Err(Error::Validation(format!(
                "diagonal element {k} of u^dagger rho u has imaginary part {}",
                w.im
            )));
        }
        probs.push(w.re);
    }
    Tomogram::new(probs, None)
}

/// Tomogram of a composite state under a global rotation; the result keeps
/// the state's factorization so marginals are defined.
pub fn joint_tomogram<T: Real>(rho: &DensityMatrix<T>, u: &UnitaryMatrix<T>) -> Result<Tomogram<T>> {
    let dims = rho
        .subsystem_dims()
        .ok_or_else(|| Error::Configuration("joint tomogram needs subsystem_dims".into()))?
        .to_vec();
    let mut w = tomogram(rho, u)?;
    w.subsystem_dims = Some(dims);
    Ok(w)
}

/// Sums out every subsystem not in `keep` (0-based).
pub fn marginal<T: Real>(w: &Tomogram<T>, keep: &[usize]) -> Result<Tomogram<T>> {
    let dims = w
        .subsystem_dims()
        .ok_or_else(|| Error::Configuration("marginal needs subsystem_dims".into()))?;
    let split = Split::new(dims, keep)?;
    let mut probs = vec![T::zero(); split.kept_dim];
    for (i, &p) in w.probs.iter().enumerate() {
        let (kept, _) = split.split(i);
        probs[kept] = probs[kept] + p;
    }
    let mut out = Tomogram::new(probs, Some(split.kept_dims()))?;
    out.rotation_label = w.rotation_label.clone();
    Ok(out)
}

/// `(w_F)_m = |Σ_m' F_mm' √w_m'|²` with nonnegative amplitudes `√w`.
pub fn fourier_tomogram<T: Real>(w: &Tomogram<T>) -> Result<Tomogram<T>> {
    let n = w.outcomes();
    let f = qft_matrix::<T>(n)?;
    let amplitudes: Vec<Complex<T>> = w.probs.iter().map(|&p| Complex::new(p.sqrt(), T::zero())).collect();
    let transformed = f.matrix().mul_vec(&amplitudes);
    let probs: Vec<T> = transformed.iter().map(|z| z.norm_sqr()).collect();
    let total: T = probs.iter().copied().sum();
    let probs = probs.into_iter().map(|p| p / total).collect();
    Tomogram::new(probs, None)
}

/// `p_k = |<a_k|ψ>|²` for the basis given by the columns of `basis`.
pub fn measurement_distribution<T: Real>(psi: &[Complex<T>], basis: &UnitaryMatrix<T>) -> Result<Tomogram<T>> {
    check_same_dim(basis.dim(), psi.len())?;
    let norm = vec_norm(psi);
    if !((norm - T::one()).abs() <= T::NORM_TOL) {
        return Err(Error::Validation(format!("state vector norm is {norm}, expected 1")));
    }
    let m = basis.matrix();
    let probs = (0..basis.dim())
        .map(|k| {
            (0..psi.len())
                .fold(Complex::zero(), |acc: Complex<T>, j| acc + m[(j, k)].conj() * psi[j])
                .norm_sqr()
        })
        .collect();
    Tomogram::new(probs, None)
}

/// `c = max_jk |<a_j|b_k>|`, the largest entry modulus of `A^dagger B`.
pub fn basis_overlap_bound<T: Real>(a: &UnitaryMatrix<T>, b: &UnitaryMatrix<T>) -> Result<T> {
    check_same_dim(a.dim(), b.dim())?;
    Ok(a.matrix().adjoint().matmul(b.matrix()).max_abs())
}

/// `u·F`: the rotation whose measurement basis is the Fourier transform of
/// the columns of `u`. Tomograms at `u` and `u·F` are the two
/// distributions of a mutually unbiased pair.
pub fn fourier_rotated<T: Real>(u: &UnitaryMatrix<T>) -> UnitaryMatrix<T> {
    let f = qft_matrix::<T>(u.dim()).expect("unitary dimension is >= 1");
    u.compose(&f).expect("same dimension")
}
