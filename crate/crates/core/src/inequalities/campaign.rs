//! Randomized sweeps of the inequality checkers.
//!
//! Trial `i` draws everything it needs from `task_rng(seed, i)`, trials run in
//! parallel, and results are folded in trial order, so a summary is a pure
//! function of its configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::checks::*;
use super::report::{CampaignSummary, InequalityReport, SlackAccumulator};
use crate::entropy::RenyiOrder;
use crate::error::{Error, Result};
use crate::linalg::{flat_simplex, haar_unitary, qft_matrix, DensityMatrix, UnitaryMatrix};
use crate::rng::{task_rng, TaskRng};
use crate::scalar::Real;
use crate::tomography::Tomogram;

const CHUNK: usize = 4096;

/// Inequalities that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Inequality {
    /// Deutsch bound, Haar basis pairs.
    Uu5,
    /// Maassen-Uffink bound, Haar basis pairs.
    Uu7,
    /// Maassen-Uffink bound for the mutually unbiased pair (I, F).
    Uu9,
    /// Deutsch bound is never tighter than Maassen-Uffink.
    Uu5VsUu7,
    Sa23,
    Ssa31,
    Sa27,
    Ssa36,
    Kk2,
    Cc5,
    Cc6,
    Cc6a,
    Cc8,
    Aaa,
    Bbb,
}

impl Inequality {
    pub const ALL: [Inequality; 15] = [
        Self::Uu5,
        Self::Uu7,
        Self::Uu9,
        Self::Uu5VsUu7,
        Self::Sa23,
        Self::Ssa31,
        Self::Sa27,
        Self::Ssa36,
        Self::Kk2,
        Self::Cc5,
        Self::Cc6,
        Self::Cc6a,
        Self::Cc8,
        Self::Aaa,
        Self::Bbb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Uu5 => "UU5",
            Self::Uu7 => "UU7",
            Self::Uu9 => "UU9",
            Self::Uu5VsUu7 => "UU5-UU7",
            Self::Sa23 => "SA-23",
            Self::Ssa31 => "SSA-31",
            Self::Sa27 => "SA-27",
            Self::Ssa36 => "SSA-36",
            Self::Kk2 => "KK2",
            Self::Cc5 => "CC5",
            Self::Cc6 => "CC6",
            Self::Cc6a => "CC6a",
            Self::Cc8 => "CC8",
            Self::Aaa => "AAA",
            Self::Bbb => "BBB",
        }
    }

    /// Subsystem dims used when the configuration gives none.
    pub fn default_dims(self) -> Vec<usize> {
        match self {
            Self::Sa23 | Self::Sa27 => vec![2, 2],
            Self::Ssa31 | Self::Ssa36 => vec![2, 2, 2],
            _ => vec![2],
        }
    }

    fn parts(self) -> Option<usize> {
        match self {
            Self::Sa23 | Self::Sa27 => Some(2),
            Self::Ssa31 | Self::Ssa36 => Some(3),
            _ => None,
        }
    }

    fn uses_orders(self) -> bool {
        matches!(self, Self::Kk2 | Self::Cc5)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        Self::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(wanted))
            .or_else(|| match wanted.to_ascii_uppercase().as_str() {
                "SA" | "SA23" => Some(Self::Sa23),
                "SSA" | "SSA31" => Some(Self::Ssa31),
                "SA27" => Some(Self::Sa27),
                "SSA36" => Some(Self::Ssa36),
                _ => None,
            })
            .ok_or_else(|| {
                let known: Vec<_> = Self::ALL.iter().map(|i| i.name()).collect();
                Error::InvalidArgument(format!("unknown inequality {s:?}; known: {}", known.join(", ")))
            })
    }
}

/// Random state family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// Flat-simplex spectrum in a Haar eigenbasis.
    #[default]
    Mixed,
    /// First column of a Haar unitary.
    Pure,
}

impl Ensemble {
    pub fn name(self) -> &'static str {
        match self {
            Self::Mixed => "mixed",
            Self::Pure => "pure",
        }
    }

    pub fn sample<T: Real>(self, n: usize, rng: &mut TaskRng) -> Result<DensityMatrix<T>> {
        match self {
            Self::Mixed => DensityMatrix::random_mixed(n, rng),
            Self::Pure => DensityMatrix::random_pure(n, rng),
        }
    }
}

impl FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mixed" => Ok(Self::Mixed),
            "pure" => Ok(Self::Pure),
            other => Err(Error::InvalidArgument(format!(
                "unknown ensemble {other:?} (mixed|pure)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub inequality: Inequality,
    /// Subsystem dims; a single entry is the Hilbert-space dimension.
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Renyi orders `α` for KK2 / CC5 (each trial evaluates all of them).
    pub alphas: Vec<f64>,
    pub ensemble: Ensemble,
    /// Slack tolerance; defaults to the scalar's inequality tolerance.
    pub tolerance: Option<f64>,
    /// How many lowest-slack reports to keep.
    pub worst_k: usize,
}

impl CampaignConfig {
    pub fn new(inequality: Inequality, trials: usize, seed: u64) -> Self {
        Self {
            inequality,
            dims: inequality.default_dims(),
            trials,
            seed,
            alphas: vec![0.6, 0.8, 2.0, 4.0],
            ensemble: Ensemble::Mixed,
            tolerance: None,
            worst_k: 5,
        }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = dims;
        self
    }

    pub fn with_alphas(mut self, alphas: Vec<f64>) -> Self {
        self.alphas = alphas;
        self
    }

    pub fn with_ensemble(mut self, ensemble: Ensemble) -> Self {
        self.ensemble = ensemble;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = Some(tolerance);
        self
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidDimension(format!("dims {:?}", self.dims)));
        }
        if let Some(parts) = self.inequality.parts() {
            if self.dims.len() != parts {
                return Err(Error::Configuration(format!(
                    "{} needs {parts} subsystem dims, got {:?}",
                    self.inequality, self.dims
                )));
            }
        }
        if self.inequality.uses_orders() {
            if self.alphas.is_empty() {
                return Err(Error::InvalidArgument("at least one alpha is required".into()));
            }
            if let Some(a) = self.alphas.iter().find(|&&a| !(a > 0.5) || !a.is_finite()) {
                return Err(Error::OutOfConjugacyDomain(*a));
            }
        }
        Ok(())
    }

    fn echo(&self, tolerance: f64) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        m.insert("name".into(), json!(self.inequality.name()));
        m.insert("dims".into(), json!(self.dims));
        m.insert("trials".into(), json!(self.trials));
        m.insert("tolerance".into(), json!(tolerance));
        if self.inequality.uses_orders() {
            m.insert("alphas".into(), json!(self.alphas));
        }
        if !matches!(
            self.inequality,
            Inequality::Aaa | Inequality::Bbb | Inequality::Kk2 | Inequality::Uu5VsUu7
        ) {
            m.insert("ensemble".into(), json!(self.ensemble.name()));
        }
        m
    }
}

/// Summary plus the lowest-slack reports, and violations split by whether
/// they are hard failures or findings about a conjectured inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignOutcome {
    pub summary: CampaignSummary,
    pub worst: Vec<InequalityReport>,
    pub assertion_failures: usize,
    pub findings: usize,
}

fn trial_reports<T: Real>(config: &CampaignConfig, index: usize) -> Result<Vec<InequalityReport>> {
    let mut rng = task_rng(config.seed, index as u64);
    let n = config.dim();
    let dims = config.dims.clone();
    let orders = || config.alphas.iter().map(|&a| RenyiOrder::new(T::lit(a)));
    let state = |rng: &mut TaskRng| -> Result<DensityMatrix<T>> {
        let rho = config.ensemble.sample::<T>(n, rng)?;
        if dims.len() > 1 {
            rho.with_subsystems(dims.clone())
        } else {
            Ok(rho)
        }
    };
    let pure_vector = |rng: &mut TaskRng| -> Result<Vec<crate::Complex<T>>> {
        let u: UnitaryMatrix<T> = haar_unitary(n, rng)?;
        Ok(u.column(0))
    };

    let reports = match config.inequality {
        Inequality::Uu5 | Inequality::Uu7 => {
            let psi = pure_vector(&mut rng)?;
            let a = haar_unitary(n, &mut rng)?;
            let b = haar_unitary(n, &mut rng)?;
            if config.inequality == Inequality::Uu5 {
                vec![check_deutsch(&psi, &a, &b)?]
            } else {
                vec![check_maassen_uffink(&psi, &a, &b)?]
            }
        }
        Inequality::Uu9 => {
            let psi = pure_vector(&mut rng)?;
            vec![check_maassen_uffink(
                &psi,
                &UnitaryMatrix::identity(n),
                &qft_matrix(n)?,
            )?]
        }
        Inequality::Uu5VsUu7 => {
            let a = haar_unitary::<T, _>(n, &mut rng)?;
            let b = haar_unitary(n, &mut rng)?;
            vec![check_deutsch_vs_maassen_uffink(&a, &b)?]
        }
        Inequality::Sa23 => {
            let rho = state(&mut rng)?;
            let u = haar_unitary(n, &mut rng)?;
            vec![check_subadditivity_tomographic(&rho, &u)?]
        }
        Inequality::Ssa31 => {
            let rho = state(&mut rng)?;
            let u = haar_unitary(n, &mut rng)?;
            vec![check_strong_subadditivity_tomographic(&rho, &u)?]
        }
        Inequality::Sa27 => vec![check_vn_subadditivity(&state(&mut rng)?)?],
        Inequality::Ssa36 => vec![check_vn_ssa(&state(&mut rng)?)?],
        Inequality::Kk2 => {
            let w = Tomogram::new(flat_simplex::<T, _>(n, &mut rng), None)?;
            orders()
                .map(|a| check_renyi_qft_amplitude(&w, a?))
                .collect::<Result<Vec<_>>>()?
        }
        Inequality::Cc5 => {
            let rho = state(&mut rng)?;
            let u = haar_unitary(n, &mut rng)?;
            orders()
                .map(|a| check_renyi_qft_rotation(&rho, &u, a?))
                .collect::<Result<Vec<_>>>()?
        }
        Inequality::Cc6 | Inequality::Cc6a => {
            let rho = state(&mut rng)?;
            let u = haar_unitary(n, &mut rng)?;
            let variant = if config.inequality == Inequality::Cc6 {
                ShannonQftVariant::Rotation
            } else {
                ShannonQftVariant::Amplitude
            };
            vec![check_shannon_qft(&rho, &u, variant)?]
        }
        Inequality::Cc8 => vec![check_vn_fourier(&state(&mut rng)?)?],
        Inequality::Aaa => check_unitary_row_entropy(&haar_unitary::<T, _>(n, &mut rng)?)?.columns,
        Inequality::Bbb => vec![check_unitary_row_entropy(&haar_unitary::<T, _>(n, &mut rng)?)?.aggregate],
    };
    Ok(reports)
}

/// Runs a sweep of `config.trials` independent random trials.
pub fn run_campaign<T: Real>(config: &CampaignConfig) -> Result<CampaignOutcome> {
    config.validate()?;
    let tolerance = config.tolerance.unwrap_or_else(|| T::INEQUALITY_TOL.as_f64());
    let mut acc = SlackAccumulator::new(tolerance);
    let mut worst: Vec<(f64, usize, InequalityReport)> = Vec::new();
    let (mut assertion_failures, mut findings) = (0, 0);

    let mut start = 0;
    while start < config.trials {
        let end = (start + CHUNK).min(config.trials);
        let chunk: Vec<Result<Vec<InequalityReport>>> = (start..end)
            .into_par_iter()
            .map(|i| trial_reports::<T>(config, i))
            .collect();
        for (offset, reports) in chunk.into_iter().enumerate() {
            let index = start + offset;
            let reports = reports?;
            let mut trial_min: Option<InequalityReport> = None;
            for report in reports {
                let report = report.with_tolerance(tolerance).with_param("trial", index);
                if !report.satisfied {
                    if report.is_asserted() {
                        assertion_failures += 1;
                    } else {
                        findings += 1;
                    }
                }
                if trial_min.as_ref().is_none_or(|m| report.slack < m.slack) {
                    trial_min = Some(report);
                }
            }
            if let Some(report) = trial_min {
                acc.push(report.slack);
                keep_worst(&mut worst, config.worst_k, index, report);
            }
        }
        start = end;
    }

    let mut summary = acc.finish(config.seed, config.echo(tolerance));
    summary
        .config
        .insert("scalar".into(), json!(std::any::type_name::<T>()));
    Ok(CampaignOutcome {
        summary,
        worst: worst.into_iter().map(|(_, _, r)| r).collect(),
        assertion_failures,
        findings,
    })
}

fn keep_worst(worst: &mut Vec<(f64, usize, InequalityReport)>, k: usize, index: usize, report: InequalityReport) {
    if k == 0 {
        return;
    }
    let key = (report.slack, index);
    let pos = worst
        .iter()
        .position(|(s, i, _)| (key.0, key.1) < (*s, *i))
        .unwrap_or(worst.len());
    if pos < k {
        worst.insert(pos, (report.slack, index, report));
        worst.truncate(k);
    }
}

/// Settings for the mixed-state Renyi-Fourier conjecture search.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureConfig {
    pub dim: usize,
    pub alphas: Vec<f64>,
    pub ensemble: Ensemble,
    pub trials: usize,
    pub seed: u64,
    pub worst_k: usize,
}

/// Samples states and rotations and evaluates `R_α(u) + R_β(u·F) >= ln N`
/// for every `α`. Violations with `α > 1` on mixed states are findings;
/// anything else is an assertion failure.
pub fn conjecture_search<T: Real>(config: &ConjectureConfig) -> Result<CampaignOutcome> {
    let mut campaign = CampaignConfig::new(Inequality::Cc5, config.trials, config.seed)
        .with_dims(vec![config.dim])
        .with_alphas(config.alphas.clone())
        .with_ensemble(config.ensemble);
    campaign.worst_k = config.worst_k;
    run_campaign::<T>(&campaign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for i in Inequality::ALL {
            assert_eq!(i.name().parse::<Inequality>().unwrap(), i);
        }
        assert_eq!("cc6A".parse::<Inequality>().unwrap(), Inequality::Cc6a);
        assert!("XX1".parse::<Inequality>().is_err());
    }

    #[test]
    fn small_campaigns_pass() {
        for i in Inequality::ALL {
            let mut cfg = CampaignConfig::new(i, 50, 1);
            if i.parts().is_none() {
                cfg = cfg.with_dims(vec![3]);
            }
            let out = run_campaign::<f64>(&cfg).unwrap();
            assert_eq!(out.summary.trials, 50);
            assert_eq!(out.assertion_failures, 0, "{i}: {:?}", out.worst.first());
            assert!(out.summary.min_slack <= out.summary.mean_slack);
            assert!(out.worst.len() <= 5);
        }
    }

    #[test]
    fn campaign_is_reproducible() {
        let cfg = CampaignConfig::new(Inequality::Ssa31, 300, 7);
        let a = crate::json::to_json_string(&run_campaign::<f64>(&cfg).unwrap().summary);
        let b = crate::json::to_json_string(&run_campaign::<f64>(&cfg).unwrap().summary);
        assert_eq!(a, b);
    }

    #[test]
    fn config_errors() {
        let cfg = CampaignConfig::new(Inequality::Sa23, 10, 1).with_dims(vec![4]);
        assert!(matches!(run_campaign::<f64>(&cfg), Err(Error::Configuration(_))));
        let cfg = CampaignConfig::new(Inequality::Kk2, 10, 1).with_alphas(vec![0.5]);
        assert!(matches!(run_campaign::<f64>(&cfg), Err(Error::OutOfConjugacyDomain(_))));
        let cfg = CampaignConfig::new(Inequality::Kk2, 0, 1);
        assert!(run_campaign::<f64>(&cfg).is_err());
    }

    #[test]
    fn worst_list_is_sorted() {
        let cfg = CampaignConfig::new(Inequality::Cc6a, 200, 3).with_dims(vec![2]);
        let out = run_campaign::<f64>(&cfg).unwrap();
        for pair in out.worst.windows(2) {
            assert!(pair[0].slack <= pair[1].slack);
        }
        assert_eq!(out.worst[0].slack, out.summary.min_slack);
    }

    #[test]
    fn f32_campaign_runs() {
        let cfg = CampaignConfig::new(Inequality::Cc6a, 100, 4).with_dims(vec![3]);
        let out = run_campaign::<f32>(&cfg).unwrap();
        assert_eq!(out.assertion_failures, 0);
    }
}
