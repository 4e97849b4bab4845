use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::json::serialize_extended_f64;

/// Which side must be larger for the inequality to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `lhs >= rhs`
    GreaterEq,
    /// `lhs <= rhs`
    LessEq,
}

/// Outcome of one inequality evaluation. `slack >= 0` means the inequality
/// holds exactly; `satisfied` allows `slack >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    #[serde(serialize_with = "serialize_extended_f64")]
    pub lhs: f64,
    #[serde(serialize_with = "serialize_extended_f64")]
    pub rhs: f64,
    #[serde(serialize_with = "serialize_extended_f64")]
    pub slack: f64,
    pub satisfied: bool,
    pub tolerance: f64,
    pub params: BTreeMap<String, Value>,
}

impl InequalityReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, orientation: Orientation, tolerance: f64) -> Self {
        let slack = match orientation {
            Orientation::GreaterEq => lhs - rhs,
            Orientation::LessEq => rhs - lhs,
        };
        // inf - inf and friends: an undefined slack is not a pass
        let slack = if slack.is_nan() { f64::NEG_INFINITY } else { slack };
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tolerance,
            tolerance,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Re-evaluates `satisfied` under another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.satisfied = self.slack >= -tolerance;
        self
    }

    /// Whether a violation of this report is a hard failure rather than a
    /// finding about a conjectured inequality.
    pub fn is_asserted(&self) -> bool {
        !matches!(self.params.get("conjecture"), Some(Value::Bool(true)))
    }
}

/// Monte-Carlo estimate of a group average against its bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub bound: f64,
    /// `estimate + 3 stderr >= bound`
    pub satisfied: bool,
    /// `estimate - 3 stderr >= bound`
    pub above_bound_3sigma: bool,
}

impl MonteCarloEstimate {
    pub fn from_samples(samples: &[f64], bound: f64) -> Self {
        let n = samples.len() as f64;
        let estimate = samples.iter().sum::<f64>() / n;
        let var = if samples.len() > 1 {
            samples.iter().map(|x| (x - estimate) * (x - estimate)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let stderr = (var / n).sqrt();
        Self {
            estimate,
            stderr,
            bound,
            satisfied: estimate + 3.0 * stderr >= bound,
            above_bound_3sigma: estimate - 3.0 * stderr >= bound,
        }
    }
}

/// Aggregate over a sampling campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub trials: usize,
    pub violations: usize,
    #[serde(serialize_with = "serialize_extended_f64")]
    pub min_slack: f64,
    #[serde(serialize_with = "serialize_extended_f64")]
    pub mean_slack: f64,
    pub seed: u64,
    pub config: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<MonteCarloEstimate>,
}

/// Folds per-trial slacks in trial order.
#[derive(Debug, Clone)]
pub(crate) struct SlackAccumulator {
    trials: usize,
    violations: usize,
    min: f64,
    sum: f64,
    tolerance: f64,
}

impl SlackAccumulator {
    pub fn new(tolerance: f64) -> Self {
        Self {
            trials: 0,
            violations: 0,
            min: f64::INFINITY,
            sum: 0.0,
            tolerance,
        }
    }

    pub fn push(&mut self, slack: f64) {
        self.trials += 1;
        if slack < -self.tolerance {
            self.violations += 1;
        }
        self.min = self.min.min(slack);
        self.sum += slack;
    }

    pub fn finish(self, seed: u64, config: BTreeMap<String, Value>) -> CampaignSummary {
        let mean = if self.trials > 0 {
            self.sum / self.trials as f64
        } else {
            0.0
        };
        CampaignSummary {
            trials: self.trials,
            violations: self.violations,
            min_slack: self.min,
            mean_slack: mean.max(self.min),
            seed,
            config,
            estimate: None,
        }
    }
}
