//! Monte-Carlo Haar averages compared with their lower bounds.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use super::report::{CampaignSummary, MonteCarloEstimate, SlackAccumulator};
use crate::entropy::{conjugate_order, renyi, shannon, shannon_probs, RenyiOrder};
use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, DensityMatrix, UnitaryMatrix};
use crate::rng::task_rng;
use crate::scalar::Real;
use crate::tomography::tomogram;

/// Fewest samples accepted for an estimate.
pub const MIN_SAMPLES: usize = 100;

/// Quantity averaged over Haar-random `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HaarAverage {
    /// `E[H(w(ρ, u))] >= ½ ln N`
    Cc17,
    /// `E[R_α(w) + R_β(w)] >= ln N` with `β` conjugate to `α`
    Cc18 { alpha: f64 },
    /// `E[H(|u_{0k}|², ..., |u_{N-1,k}|²)] >= ½ ln N` for one column `k`
    Ddd { column: usize },
}

impl HaarAverage {
    pub fn name(self) -> &'static str {
        match self {
            Self::Cc17 => "CC17",
            Self::Cc18 { .. } => "CC18",
            Self::Ddd { .. } => "DDD",
        }
    }

    pub fn bound(self, n: usize) -> f64 {
        let ln_n = (n as f64).ln();
        match self {
            Self::Cc18 { .. } => ln_n,
            _ => 0.5 * ln_n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HaarAverageConfig<T: Real> {
    pub kind: HaarAverage,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    /// State whose tomogram is averaged; `|0><0|` when absent.
    pub state: Option<DensityMatrix<T>>,
}

impl<T: Real> HaarAverageConfig<T> {
    pub fn new(kind: HaarAverage, dim: usize, samples: usize, seed: u64) -> Self {
        Self {
            kind,
            dim,
            samples,
            seed,
            state: None,
        }
    }

    pub fn with_state(mut self, state: DensityMatrix<T>) -> Self {
        self.dim = state.dim();
        self.state = Some(state);
        self
    }
}

fn sample_value<T: Real>(kind: HaarAverage, rho: &DensityMatrix<T>, u: &UnitaryMatrix<T>) -> Result<f64> {
    Ok(match kind {
        HaarAverage::Cc17 => shannon(&tomogram(rho, u)?).value.as_f64(),
        HaarAverage::Cc18 { alpha } => {
            let a = RenyiOrder::new(T::lit(alpha))?;
            let b = conjugate_order(a)?;
            let w = tomogram(rho, u)?;
            renyi(&w, a).value.as_f64() + renyi(&w, b).value.as_f64()
        }
        HaarAverage::Ddd { column } => {
            let probs: Vec<T> = u.column(column).iter().map(|z| z.norm_sqr()).collect();
            shannon_probs(&probs).as_f64()
        }
    })
}

/// Estimates the average with `config.samples` Haar draws. Per-sample slack
/// is `value - bound`, so `violations` counts samples below the bound, which
/// is expected; the verdict is in `estimate`.
pub fn estimate_haar_average<T: Real>(config: &HaarAverageConfig<T>) -> Result<CampaignSummary> {
    if config.samples < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: config.samples,
            min: MIN_SAMPLES,
        });
    }
    let n = config.dim;
    if n == 0 {
        return Err(Error::InvalidDimension("dimension must be >= 1".into()));
    }
    match config.kind {
        HaarAverage::Cc18 { alpha } if !(alpha > 0.5 && alpha.is_finite()) => {
            return Err(Error::OutOfConjugacyDomain(alpha));
        }
        HaarAverage::Ddd { column } if column >= n => {
            return Err(Error::InvalidArgument(format!(
                "column {column} out of range for dimension {n}"
            )));
        }
        _ => {}
    }
    let rho = match &config.state {
        Some(rho) if rho.dim() != n => {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: rho.dim(),
            })
        }
        Some(rho) => rho.clone(),
        None => DensityMatrix::basis_state(n, 0)?,
    };

    let samples: Vec<f64> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(config.seed, i as u64);
            let u = haar_unitary::<T, _>(n, &mut rng)?;
            sample_value(config.kind, &rho, &u)
        })
        .collect::<Result<_>>()?;

    let bound = config.kind.bound(n);
    let mut acc = SlackAccumulator::new(T::INEQUALITY_TOL.as_f64());
    for s in &samples {
        acc.push(s - bound);
    }
    let mut echo = BTreeMap::new();
    echo.insert("name".into(), json!(config.kind.name()));
    echo.insert("dim".into(), json!(n));
    echo.insert("samples".into(), json!(config.samples));
    echo.insert(
        "state".into(),
        json!(if config.state.is_some() { "given" } else { "pure-ground" }),
    );
    match config.kind {
        HaarAverage::Cc18 { alpha } => {
            echo.insert("alpha".into(), json!(alpha));
        }
        HaarAverage::Ddd { column } => {
            echo.insert("column".into(), json!(column));
        }
        HaarAverage::Cc17 => {}
    }
    let mut summary = acc.finish(config.seed, echo);
    summary.estimate = Some(MonteCarloEstimate::from_samples(&samples, bound));
    Ok(summary)
}
