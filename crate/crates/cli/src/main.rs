//! `tomo-entropy`: tomograms, tomographic entropies and entropic inequality
//! checks from the command line.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tomo_entropy::entropy::{quantum_renyi, renyi, shannon, von_neumann, RenyiOrder};
use tomo_entropy::inequalities::{
    check_deutsch, check_deutsch_vs_maassen_uffink, check_maassen_uffink, check_renyi_qft_amplitude,
    check_renyi_qft_rotation, check_shannon_qft, check_strong_subadditivity_tomographic,
    check_subadditivity_tomographic, check_unitary_row_entropy, check_vn_fourier, check_vn_ssa, check_vn_subadditivity,
    conjecture_search, estimate_haar_average, run_campaign, CampaignConfig, CampaignOutcome, ConjectureConfig,
    Ensemble, HaarAverage, HaarAverageConfig, Inequality, InequalityReport, ShannonQftVariant,
};
use tomo_entropy::linalg::{haar_unitary, qft_matrix, DensityMatrix, MatrixFile, UnitaryMatrix};
use tomo_entropy::optimize::{minimize_renyi, minimize_shannon, Budget};
use tomo_entropy::rng::task_rng;
use tomo_entropy::states::builtin;
use tomo_entropy::tomography::{tomogram, Tomogram, TomogramFile};
use tomo_entropy::Error;

use output::{Csv, Format, Output};

const CSV_HELP: &str = "\
CSV layouts (one header row, then one row per item):
  qft                     row,col,re,im
  tomogram                outcome,prob
  entropy                 kind,q,value
  check                   name,lhs,rhs,slack,satisfied,tolerance,seed,params
  campaign, conjecture-search
                          name,trials,violations,assertion_failures,findings,min_slack,mean_slack,tolerance,seed
  haar-avg                name,dim,samples,estimate,stderr,bound,satisfied,above_bound_3sigma,seed
  minimize                kind,value,oracle_value,gap,iterations,restarts,converged,seed

Exit codes: 0 ok, 1 an asserted inequality was violated, 2 usage or input error,
3 conjecture-search findings (violations of the conjectured mixed-state bound).";

#[derive(Parser, Debug)]
#[command(name = "tomo-entropy", version, about = "Spin tomograms, tomographic entropies and entropic inequalities", after_help = CSV_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Master seed (falls back to TOMO_ENTROPY_SEED, then to a random seed)
    #[arg(long, env = "TOMO_ENTROPY_SEED")]
    seed: Option<u64>,
    /// Slack tolerance for inequality checks
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct StateArgs {
    /// State file: {"dim": N, "subsystem_dims": [..], "entries": [[re, im], ...]}
    #[arg(long, conflicts_with = "builtin")]
    state: Option<PathBuf>,
    /// pure-ground, maximally-mixed, bell, ghz or diag:a,b,...
    #[arg(long)]
    builtin: Option<String>,
    /// Dimension for builtin states
    #[arg(long)]
    dim: Option<usize>,
    /// Subsystem dims, e.g. 2,2,2
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    Identity,
    Qft,
    Haar,
}

#[derive(Args, Debug, Clone)]
struct BasisArgs {
    /// Rotation for the tomogram
    #[arg(long, value_enum, default_value_t = Basis::Identity)]
    basis: Basis,
    /// Unitary file (same layout as a state file); overrides --basis
    #[arg(long)]
    unitary: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the N x N Fourier matrix
    Qft {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Tomogram of a state in a basis
    Tomogram {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Shannon / Renyi entropies of a tomogram, and quantum entropies of the state
    Entropy {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        basis: BasisArgs,
        /// Tomogram file instead of a state
        #[arg(long, conflicts_with_all = ["state", "builtin"])]
        tomogram: Option<PathBuf>,
        /// Renyi orders
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one inequality on one state
    Check {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        basis: BasisArgs,
        /// Renyi order for KK2 / CC5
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized sweep of one inequality
    Campaign {
        #[arg(long)]
        name: String,
        #[arg(long, conflicts_with = "dims")]
        dim: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Renyi orders for KK2 / CC5
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        #[arg(long, default_value = "mixed")]
        ensemble: String,
        /// Lowest-slack reports to keep
        #[arg(long, default_value_t = 5)]
        worst: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Monte-Carlo Haar average against its bound (CC17, CC18, DDD)
    HaarAvg {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        /// Column for DDD
        #[arg(long, default_value_t = 0)]
        column: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Minimize the tomographic entropy over unitaries
    Minimize {
        #[command(flatten)]
        state: StateArgs,
        /// Renyi order (Shannon when absent)
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Search for violations of the mixed-state Renyi-Fourier bound
    ConjectureSearch {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [1.5, 2.0, 3.0, 4.0])]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value = "mixed")]
        ensemble: String,
        #[arg(long, default_value_t = 5)]
        worst: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure with a human-readable context prefix; always exit code 2.
struct Failure(String);

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.into().to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn context<T>(what: impl std::fmt::Display, r: tomo_entropy::Result<T>) -> Res<T> {
    r.map_err(|e| Failure(format!("{what}: {e}")))
}

fn read_file(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_state(args: &StateArgs, required: bool) -> Res<Option<DensityMatrix<f64>>> {
    let rho = match (&args.state, &args.builtin) {
        (Some(path), _) => {
            let text = read_file(path)?;
            let file = context(path.display(), MatrixFile::parse(&text))?;
            Some(context(path.display(), file.to_density::<f64>())?)
        }
        (None, Some(name)) => Some(context(format!("builtin {name}"), builtin::<f64>(name, args.dim))?),
        (None, None) if required => return Err(Failure("one of --state or --builtin is required".into())),
        (None, None) => None,
    };
    match (rho, &args.dims) {
        (Some(rho), Some(dims)) => Ok(Some(context("--dims", rho.with_subsystems(dims.clone()))?)),
        (rho, _) => Ok(rho),
    }
}

fn load_basis(args: &BasisArgs, n: usize, seed: u64) -> Res<UnitaryMatrix<f64>> {
    if let Some(path) = &args.unitary {
        let text = read_file(path)?;
        let file = context(path.display(), MatrixFile::parse(&text))?;
        let u = context(path.display(), file.to_unitary::<f64>())?;
        if u.dim() != n {
            return Err(Failure(format!(
                "{}: unitary has dimension {}, state has {n}",
                path.display(),
                u.dim()
            )));
        }
        return Ok(u);
    }
    Ok(match args.basis {
        Basis::Identity => UnitaryMatrix::identity(n),
        Basis::Qft => qft_matrix(n)?,
        Basis::Haar => haar_unitary(n, &mut task_rng(seed, 0))?,
    })
}

fn resolve_seed(common: &Common) -> u64 {
    common.seed.unwrap_or_else(rand::random)
}

fn order(q: f64) -> Res<RenyiOrder<f64>> {
    context(format!("order {q}"), RenyiOrder::new(q))
}

fn report_rows(reports: &[InequalityReport], seed: u64) -> Csv {
    let mut csv = Csv::new(&[
        "name",
        "lhs",
        "rhs",
        "slack",
        "satisfied",
        "tolerance",
        "seed",
        "params",
    ]);
    for r in reports {
        csv.row(vec![
            r.name.clone(),
            Csv::num(r.lhs),
            Csv::num(r.rhs),
            Csv::num(r.slack),
            r.satisfied.to_string(),
            Csv::num(r.tolerance),
            seed.to_string(),
            tomo_entropy::json::to_json_compact(&r.params),
        ]);
    }
    csv
}

fn verdict(reports: &[InequalityReport]) -> u8 {
    if reports.iter().any(|r| !r.satisfied && r.is_asserted()) {
        1
    } else if reports.iter().any(|r| !r.satisfied) {
        3
    } else {
        0
    }
}

fn cmd_qft(dim: usize) -> Res<Output> {
    let f = context("qft", qft_matrix::<f64>(dim))?;
    let mut csv = Csv::new(&["row", "col", "re", "im"]);
    for j in 0..dim {
        for k in 0..dim {
            let z = f.matrix()[(j, k)];
            csv.row(vec![j.to_string(), k.to_string(), Csv::num(z.re), Csv::num(z.im)]);
        }
    }
    let json = serde_json::to_value(MatrixFile::from_matrix(f.matrix(), None)).expect("serializable");
    Ok(Output::new(json, csv))
}

fn cmd_tomogram(state: &StateArgs, basis: &BasisArgs, seed: u64) -> Res<Output> {
    let rho = load_state(state, true)?.expect("required");
    let u = load_basis(basis, rho.dim(), seed)?;
    let w = context("tomogram", tomogram(&rho, &u))?;
    let w = match rho.subsystem_dims() {
        Some(d) if d.len() > 1 => context("tomogram", w.with_subsystems(d.to_vec()))?,
        _ => w,
    };
    let mut csv = Csv::new(&["outcome", "prob"]);
    for (m, p) in w.probs().iter().enumerate() {
        csv.row(vec![m.to_string(), Csv::num(*p)]);
    }
    let mut json = serde_json::to_value(w.to_file()).expect("serializable");
    json["seed"] = json!(seed);
    Ok(Output::new(json, csv))
}

fn cmd_entropy(
    state: &StateArgs,
    basis: &BasisArgs,
    tomogram_path: Option<&Path>,
    qs: &[f64],
    seed: u64,
) -> Res<Output> {
    let (w, rho): (Tomogram<f64>, _) = match tomogram_path {
        Some(path) => {
            let text = read_file(path)?;
            let file = context(path.display(), TomogramFile::parse(&text))?;
            (context(path.display(), file.to_tomogram())?, None)
        }
        None => {
            let rho = load_state(state, true)?.expect("required");
            let u = load_basis(basis, rho.dim(), seed)?;
            (context("tomogram", tomogram(&rho, &u))?, Some(rho))
        }
    };
    let mut values = vec![shannon(&w)];
    for &q in qs {
        values.push(renyi(&w, order(q)?));
    }
    if let Some(rho) = rho {
        values.push(context("von Neumann entropy", von_neumann(&rho))?);
        for &q in qs {
            values.push(context("quantum Renyi entropy", quantum_renyi(&rho, order(q)?))?);
        }
    }
    let mut csv = Csv::new(&["kind", "q", "value"]);
    let mut entries = Vec::new();
    for v in &values {
        let ser = serde_json::to_value(v).expect("serializable");
        let kind = ser["kind"]["kind"].as_str().unwrap_or_default().to_string();
        let q = ser["kind"]["q"].as_f64().map(Csv::num).unwrap_or_default();
        csv.row(vec![kind, q, Csv::num(v.value)]);
        entries.push(ser);
    }
    Ok(Output::new(json!({ "seed": seed, "entropies": entries }), csv))
}

fn cmd_check(name: &str, state: &StateArgs, basis: &BasisArgs, alpha: f64, common: &Common, seed: u64) -> Res<Output> {
    let inequality: Inequality = context("--name", name.parse())?;
    let rho = load_state(state, true)?.expect("required");
    let n = rho.dim();
    let u = load_basis(basis, n, seed)?;
    let f = qft_matrix(n)?;
    let id = UnitaryMatrix::identity(n);
    let psi = || context("state", rho.pure_state_vector());
    let reports = match inequality {
        Inequality::Uu5 => vec![check_deutsch(&psi()?, &u, &f)?],
        Inequality::Uu7 => vec![check_maassen_uffink(&psi()?, &u, &f)?],
        Inequality::Uu9 => vec![check_maassen_uffink(&psi()?, &id, &f)?],
        Inequality::Uu5VsUu7 => vec![check_deutsch_vs_maassen_uffink(&u, &f)?],
        Inequality::Sa23 => vec![check_subadditivity_tomographic(&rho, &u)?],
        Inequality::Ssa31 => vec![check_strong_subadditivity_tomographic(&rho, &u)?],
        Inequality::Sa27 => vec![check_vn_subadditivity(&rho)?],
        Inequality::Ssa36 => vec![check_vn_ssa(&rho)?],
        Inequality::Kk2 => vec![check_renyi_qft_amplitude(&tomogram(&rho, &u)?, order(alpha)?)?],
        Inequality::Cc5 => vec![check_renyi_qft_rotation(&rho, &u, order(alpha)?)?],
        Inequality::Cc6 => vec![check_shannon_qft(&rho, &u, ShannonQftVariant::Rotation)?],
        Inequality::Cc6a => vec![check_shannon_qft(&rho, &u, ShannonQftVariant::Amplitude)?],
        Inequality::Cc8 => vec![check_vn_fourier(&rho)?],
        Inequality::Aaa => check_unitary_row_entropy(&u)?.columns,
        Inequality::Bbb => vec![check_unitary_row_entropy(&u)?.aggregate],
    };
    let reports: Vec<InequalityReport> = match common.tol {
        Some(t) => reports.into_iter().map(|r| r.with_tolerance(t)).collect(),
        None => reports,
    };
    let code = verdict(&reports);
    let csv = report_rows(&reports, seed);
    let json = json!({ "seed": seed, "reports": reports });
    Ok(Output::new(json, csv).with_code(code))
}

fn outcome_output(outcome: &CampaignOutcome, name: &str) -> Output {
    let s = &outcome.summary;
    let tolerance = s.config.get("tolerance").and_then(Value::as_f64).unwrap_or(f64::NAN);
    let mut csv = Csv::new(&[
        "name",
        "trials",
        "violations",
        "assertion_failures",
        "findings",
        "min_slack",
        "mean_slack",
        "tolerance",
        "seed",
    ]);
    csv.row(vec![
        name.to_string(),
        s.trials.to_string(),
        s.violations.to_string(),
        outcome.assertion_failures.to_string(),
        outcome.findings.to_string(),
        Csv::num(s.min_slack),
        Csv::num(s.mean_slack),
        Csv::num(tolerance),
        s.seed.to_string(),
    ]);
    let code = if outcome.assertion_failures > 0 {
        1
    } else if outcome.findings > 0 {
        3
    } else {
        0
    };
    Output::new(serde_json::to_value(outcome).expect("serializable"), csv).with_code(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_campaign(
    name: &str,
    dim: Option<usize>,
    dims: Option<Vec<usize>>,
    trials: usize,
    alphas: &[f64],
    ensemble: &str,
    worst: usize,
    common: &Common,
    seed: u64,
) -> Res<Output> {
    let inequality: Inequality = context("--name", name.parse())?;
    let mut config = CampaignConfig::new(inequality, trials, seed);
    if let Some(dims) = dims.or(dim.map(|n| vec![n])) {
        config = config.with_dims(dims);
    }
    if !alphas.is_empty() {
        config = config.with_alphas(alphas.to_vec());
    }
    config = config.with_ensemble(context("--ensemble", ensemble.parse::<Ensemble>())?);
    if let Some(t) = common.tol {
        config = config.with_tolerance(t);
    }
    config.worst_k = worst;
    let outcome = context(inequality, run_campaign::<f64>(&config))?;
    Ok(outcome_output(&outcome, inequality.name()))
}

fn cmd_haar_avg(name: &str, state: &StateArgs, trials: usize, alpha: f64, column: usize, seed: u64) -> Res<Output> {
    let rho = load_state(state, false)?;
    let kind = match name.to_ascii_uppercase().as_str() {
        "CC17" => HaarAverage::Cc17,
        "CC18" => HaarAverage::Cc18 { alpha },
        "DDD" => HaarAverage::Ddd { column },
        other => {
            return Err(Failure(format!(
                "--name: unknown Haar average {other:?} (CC17, CC18, DDD)"
            )))
        }
    };
    let n = rho.as_ref().map(DensityMatrix::dim).or(state.dim).unwrap_or(2);
    let mut config = HaarAverageConfig::new(kind, n, trials, seed);
    if let Some(rho) = rho {
        config = config.with_state(rho);
    }
    let summary = context(kind.name(), estimate_haar_average(&config))?;
    let est = summary.estimate.clone().expect("haar averages carry an estimate");
    let mut csv = Csv::new(&[
        "name",
        "dim",
        "samples",
        "estimate",
        "stderr",
        "bound",
        "satisfied",
        "above_bound_3sigma",
        "seed",
    ]);
    csv.row(vec![
        kind.name().to_string(),
        n.to_string(),
        trials.to_string(),
        Csv::num(est.estimate),
        Csv::num(est.stderr),
        Csv::num(est.bound),
        est.satisfied.to_string(),
        est.above_bound_3sigma.to_string(),
        seed.to_string(),
    ]);
    let code = if est.satisfied { 0 } else { 1 };
    Ok(Output::new(serde_json::to_value(&summary).expect("serializable"), csv).with_code(code))
}

fn cmd_minimize(state: &StateArgs, q: Option<f64>, restarts: usize, max_iters: usize, seed: u64) -> Res<Output> {
    let rho = load_state(state, true)?.expect("required");
    let budget = Budget {
        restarts,
        max_iters,
        ..Budget::default()
    };
    let result = match q {
        Some(q) => context("minimize", minimize_renyi(&rho, order(q)?, budget, seed))?,
        None => context("minimize", minimize_shannon(&rho, budget, seed))?,
    };
    let mut json = serde_json::to_value(&result).expect("serializable");
    json["minimizer"] =
        serde_json::to_value(MatrixFile::from_matrix(result.minimizer.matrix(), None)).expect("serializable");
    json["seed"] = json!(seed);
    let kind = json["value"]["kind"]["kind"].as_str().unwrap_or_default().to_string();
    let mut csv = Csv::new(&[
        "kind",
        "value",
        "oracle_value",
        "gap",
        "iterations",
        "restarts",
        "converged",
        "seed",
    ]);
    csv.row(vec![
        kind,
        Csv::num(result.value.value),
        Csv::num(result.oracle_value),
        Csv::num(result.gap),
        result.iterations.to_string(),
        result.restarts.to_string(),
        result.converged.to_string(),
        seed.to_string(),
    ]);
    Ok(Output::new(json, csv))
}

fn run(cli: Cli) -> Res<(Output, Common)> {
    let out = match cli.command {
        Command::Qft { dim, common } => {
            let mut o = cmd_qft(dim)?;
            o.json["dim"] = json!(dim);
            (o, common)
        }
        Command::Tomogram { state, basis, common } => (cmd_tomogram(&state, &basis, resolve_seed(&common))?, common),
        Command::Entropy {
            state,
            basis,
            tomogram,
            q,
            common,
        } => (
            cmd_entropy(&state, &basis, tomogram.as_deref(), &q, resolve_seed(&common))?,
            common,
        ),
        Command::Check {
            name,
            state,
            basis,
            alpha,
            common,
        } => {
            let seed = resolve_seed(&common);
            (cmd_check(&name, &state, &basis, alpha, &common, seed)?, common)
        }
        Command::Campaign {
            name,
            dim,
            dims,
            trials,
            alpha,
            ensemble,
            worst,
            common,
        } => {
            let seed = resolve_seed(&common);
            (
                cmd_campaign(&name, dim, dims, trials, &alpha, &ensemble, worst, &common, seed)?,
                common,
            )
        }
        Command::HaarAvg {
            name,
            state,
            trials,
            alpha,
            column,
            common,
        } => (
            cmd_haar_avg(&name, &state, trials, alpha, column, resolve_seed(&common))?,
            common,
        ),
        Command::Minimize {
            state,
            q,
            restarts,
            max_iters,
            common,
        } => (
            cmd_minimize(&state, q, restarts, max_iters, resolve_seed(&common))?,
            common,
        ),
        Command::ConjectureSearch {
            dim,
            alpha,
            trials,
            ensemble,
            worst,
            common,
        } => {
            let seed = resolve_seed(&common);
            let config = ConjectureConfig {
                dim,
                alphas: alpha,
                ensemble: context("--ensemble", ensemble.parse())?,
                trials,
                seed,
                worst_k: worst,
            };
            let outcome = context("conjecture-search", conjecture_search::<f64>(&config))?;
            (outcome_output(&outcome, "CC5"), common)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, common)) => match output.emit(common.format, common.out.as_deref()) {
            Ok(()) => ExitCode::from(output.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
