//! Entropic inequality checks, randomized sweeps and Haar averages.

mod campaign;
mod checks;
mod haar;
mod report;

pub use campaign::{
    conjecture_search, run_campaign, CampaignConfig, CampaignOutcome, ConjectureConfig, Ensemble, Inequality,
};
pub use checks::*;
pub use haar::{estimate_haar_average, HaarAverage, HaarAverageConfig, MIN_SAMPLES};
pub use report::{CampaignSummary, InequalityReport, MonteCarloEstimate, Orientation};
