//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line even when the run succeeds.

use std::f64::consts::LN_2;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use tomo_entropy::entropy::{conjugate_order, shannon, von_neumann, RenyiOrder};
use tomo_entropy::inequalities::{
    check_maassen_uffink, check_renyi_qft_rotation, check_shannon_qft, check_vn_fourier, estimate_haar_average,
    run_campaign, CampaignConfig, Ensemble, HaarAverage, HaarAverageConfig, Inequality, ShannonQftVariant,
};
use tomo_entropy::json::to_json_string;
use tomo_entropy::linalg::{qft_matrix, ComplexMatrix, DensityMatrix, UnitaryMatrix};
use tomo_entropy::optimize::{minimize_renyi, minimize_shannon, Budget};
use tomo_entropy::rng::task_rng;
use tomo_entropy::tomography::{fourier_rotated, fourier_tomogram, tomogram, Tomogram};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("runtime {elapsed:?} exceeds {limit:?}"))
}

fn q(x: f64) -> RenyiOrder<f64> {
    RenyiOrder::new(x).unwrap()
}

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// 1. Pure qubit saturates the Shannon and Renyi Fourier bounds.
fn qubit_saturation() -> Outcome {
    let t = Instant::now();
    let rho = DensityMatrix::<f64>::diagonal(&[1.0, 0.0]).unwrap();
    let u0 = UnitaryMatrix::identity(2);
    let svn = von_neumann(&rho).unwrap().value;
    let s_f = shannon(&tomogram(&rho, &fourier_rotated(&u0)).unwrap()).value;
    ensure(svn.abs() < 1e-12, || format!("S_vN = {svn}"))?;
    ensure((s_f - LN_2).abs() < 1e-12, || format!("S(F u0) = {s_f}"))?;
    ensure((svn + s_f - LN_2).abs() < 1e-12, || "Shannon sum not saturated".into())?;
    let cc8 = check_vn_fourier(&rho).unwrap();
    ensure((cc8.lhs - LN_2).abs() < 1e-12 && cc8.satisfied, || {
        format!("CC8 {cc8:?}")
    })?;
    for alpha in [2.0, 4.0] {
        let r = check_renyi_qft_rotation(&rho, &u0, q(alpha)).unwrap();
        ensure((r.lhs - LN_2).abs() < 1e-12, || format!("alpha {alpha}: lhs {}", r.lhs))?;
        // independent: R_α(δ) = 0 and R_β(uniform) = ln 2 for any β
        let beta = alpha / (2.0 * alpha - 1.0);
        let direct = 0.0 + ((0.5f64.powf(beta) * 2.0).ln() / (1.0 - beta));
        ensure((r.lhs - direct).abs() < 1e-12, || {
            format!("alpha {alpha}: direct {direct}")
        })?;
    }
    within_time(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("S_vN + S(F u0) - ln 2 = {:.1e}", svn + s_f - LN_2))
}

/// 2. Amplitude Fourier tomogram of diag(0.7, 0.3) and its entropy sum.
fn mixed_qubit_fourier_tomogram() -> Outcome {
    let t = Instant::now();
    let (a, b) = (0.7f64, 0.3f64);
    let w = Tomogram::<f64>::new(vec![a, b], None).unwrap();
    let wf = fourier_tomogram(&w).unwrap();
    let r = (a * b).sqrt();
    let expected = [0.5 + r, 0.5 - r];
    for (got, want) in wf.probs().iter().zip(expected) {
        ensure((got - want).abs() < 1e-12, || {
            format!("w_F {:?} vs {expected:?}", wf.probs())
        })?;
    }
    let rho = DensityMatrix::<f64>::diagonal(&[a, b]).unwrap();
    let report = check_shannon_qft(&rho, &UnitaryMatrix::identity(2), ShannonQftVariant::Amplitude).unwrap();
    let analytic = -xlnx(a) - xlnx(b) - xlnx(0.5 + r) - xlnx(0.5 - r) - LN_2;
    let got = report.lhs - LN_2;
    ensure((got - analytic).abs() < 1e-10, || {
        format!("lhs - ln 2 = {got}, analytic {analytic}")
    })?;
    ensure(report.satisfied, || "inequality not satisfied".into())?;
    within_time(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("lhs - ln 2 = {got:.6}"))
}

/// 3. A diagonal qubit measured in the Fourier basis gives (1/2, 1/2).
fn qft_rotated_diagonal_qubit() -> Outcome {
    let f = qft_matrix::<f64>(2).unwrap();
    for a in [0.0, 0.25, 0.5, 0.7, 1.0] {
        let rho = DensityMatrix::<f64>::diagonal(&[a, 1.0 - a]).unwrap();
        let w = tomogram(&rho, &f).unwrap();
        for p in w.probs() {
            ensure((p - 0.5).abs() < 1e-12, || format!("a = {a}: {:?}", w.probs()))?;
        }
    }
    Ok("5 values of a".into())
}

/// 4. Entropy minimization recovers the quantum entropies.
fn minimum_entropy_recovery() -> Outcome {
    let t = Instant::now();
    let instances = 50;
    let mut counts = Vec::new();
    for label in ["shannon", "renyi-0.5", "renyi-2"] {
        let mut converged = 0;
        for i in 0..instances {
            let n = 2 + i % 3;
            let rho = DensityMatrix::<f64>::random_mixed(n, &mut task_rng(2024, i as u64)).unwrap();
            let res = match label {
                "shannon" => minimize_shannon(&rho, Budget::default(), i as u64),
                "renyi-0.5" => minimize_renyi(&rho, q(0.5), Budget::default(), i as u64),
                _ => minimize_renyi(&rho, q(2.0), Budget::default(), i as u64),
            }
            .unwrap();
            ensure(res.gap >= -1e-9, || format!("{label} instance {i}: gap {}", res.gap))?;
            if res.gap <= 1e-6 {
                converged += 1;
            }
        }
        ensure(converged >= 48, || {
            format!("{label}: {converged}/{instances} converged")
        })?;
        counts.push(format!("{label} {converged}/{instances}"));
    }
    within_time(t.elapsed(), Duration::from_secs(60))?;
    Ok(counts.join(", "))
}

fn sweep(config: CampaignConfig) -> Result<usize, String> {
    let label = format!("{} dims {:?}", config.inequality, config.dims);
    let out = run_campaign::<f64>(&config.with_tolerance(1e-9)).map_err(|e| format!("{label}: {e}"))?;
    ensure(out.summary.violations == 0 && out.assertion_failures == 0, || {
        format!(
            "{label}: {} violations, worst {:?}",
            out.summary.violations,
            out.worst.first()
        )
    })?;
    ensure(out.summary.min_slack >= -1e-9, || {
        format!("{label}: min slack {}", out.summary.min_slack)
    })?;
    Ok(out.summary.trials)
}

/// 5. Randomized property sweeps with zero tolerated violations.
fn property_sweeps() -> Outcome {
    let t = Instant::now();
    let mut trials = 0;
    let mut seed = 100;
    let mut next = || {
        seed += 1;
        seed
    };
    for n in 2..=8 {
        trials += sweep(
            CampaignConfig::new(Inequality::Kk2, 10_000, next())
                .with_dims(vec![n])
                .with_alphas(vec![0.6, 0.8, 2.0, 4.0]),
        )?;
        for ineq in [Inequality::Cc6, Inequality::Cc6a, Inequality::Cc8] {
            trials += sweep(CampaignConfig::new(ineq, 1000, next()).with_dims(vec![n]))?;
        }
        for ineq in [Inequality::Aaa, Inequality::Bbb] {
            trials += sweep(CampaignConfig::new(ineq, 1000, next()).with_dims(vec![n]))?;
        }
    }
    for dims in [vec![2, 2], vec![2, 3]] {
        trials += sweep(CampaignConfig::new(Inequality::Sa23, 1000, next()).with_dims(dims.clone()))?;
        trials += sweep(CampaignConfig::new(Inequality::Sa27, 1000, next()).with_dims(dims))?;
    }
    trials += sweep(CampaignConfig::new(Inequality::Ssa31, 1000, next()).with_dims(vec![2, 2, 2]))?;
    trials += sweep(CampaignConfig::new(Inequality::Ssa36, 1000, next()).with_dims(vec![2, 2, 2]))?;
    within_time(t.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{trials} trials, 0 violations"))
}

/// Entropy of `(|z0|², |z1|²)` for a normalized complex Gaussian vector,
/// i.e. a uniformly random point on the unit sphere of C².
fn sphere_oracle(samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(samples);
    for _ in 0..samples {
        let z: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let p0 = z[0] * z[0] + z[1] * z[1];
        let p1 = z[2] * z[2] + z[3] * z[3];
        let s = p0 + p1;
        values.push(-xlnx(p0 / s) - xlnx(p1 / s));
    }
    let mean = values.iter().sum::<f64>() / samples as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (samples as f64 - 1.0);
    (mean, (var / samples as f64).sqrt())
}

/// 6. Haar averages against their bounds.
fn haar_averages() -> Outcome {
    let mut notes = Vec::new();
    for n in [2, 4, 8] {
        let s = estimate_haar_average(&HaarAverageConfig::<f64>::new(
            HaarAverage::Cc17,
            n,
            10_000,
            60 + n as u64,
        ))
        .map_err(|e| e.to_string())?;
        let est = s.estimate.unwrap();
        ensure(est.above_bound_3sigma, || format!("CC17 N={n}: {est:?}"))?;
        notes.push(format!("CC17[{n}] {:.4}", est.estimate));
    }
    let s = estimate_haar_average(&HaarAverageConfig::<f64>::new(
        HaarAverage::Ddd { column: 0 },
        2,
        100_000,
        71,
    ))
    .map_err(|e| e.to_string())?;
    let est = s.estimate.unwrap();
    let (oracle, oracle_se) = sphere_oracle(1_000_000, 72);
    let band = 3.0 * (est.stderr * est.stderr + oracle_se * oracle_se).sqrt();
    ensure((est.estimate - oracle).abs() <= band, || {
        format!("DDD {} vs oracle {oracle} (band {band})", est.estimate)
    })?;
    ensure(est.estimate > 0.5 * LN_2, || {
        format!("DDD {} below bound", est.estimate)
    })?;
    notes.push(format!("DDD {:.4} (oracle {oracle:.4})", est.estimate));
    for n in [2, 4] {
        let cfg = HaarAverageConfig::<f64>::new(HaarAverage::Cc18 { alpha: 2.0 }, n, 10_000, 80 + n as u64);
        let est = estimate_haar_average(&cfg)
            .map_err(|e| e.to_string())?
            .estimate
            .unwrap();
        let beta = conjugate_order(q(2.0)).unwrap().value();
        ensure((beta - 2.0 / 3.0).abs() < 1e-15, || format!("beta {beta}"))?;
        ensure(est.satisfied, || format!("CC18 N={n}: {est:?}"))?;
        notes.push(format!("CC18[{n}] {:.4}", est.estimate));
    }
    Ok(notes.join(", "))
}

/// 7. Fourier matrix structure, including the probe that `F^N = I` fails.
fn fourier_structure() -> Outcome {
    for n in 1..=64 {
        let f = qft_matrix::<f64>(n).unwrap();
        let m = f.matrix();
        let sym = m.max_abs_diff(&m.transpose());
        ensure(sym < 1e-12, || format!("N={n}: asymmetry {sym}"))?;
        let unit = m.unitarity_deviation();
        ensure(unit < 1e-12, || format!("N={n}: unitarity deviation {unit}"))?;
        let f4 = m.pow(4).max_abs_diff(&ComplexMatrix::identity(n));
        ensure(f4 < 1e-10, || format!("N={n}: |F^4 - I| = {f4}"))?;
    }
    let mut probe = Vec::new();
    for n in [3usize, 5, 6] {
        let f = qft_matrix::<f64>(n).unwrap();
        let dev = f.matrix().pow(n as u32).max_abs_diff(&ComplexMatrix::identity(n));
        ensure(dev > 1e-3, || format!("F^{n} = I unexpectedly holds (deviation {dev})"))?;
        probe.push(format!("|F^{n} - I| = {dev:.3}"));
    }
    Ok(format!("F^N = I probe fails as expected: {}", probe.join(", ")))
}

/// 8. Maassen-Uffink bound for the (I, F) pair, and Deutsch vs Maassen-Uffink.
fn maassen_uffink_mub() -> Outcome {
    for n in 2..=8 {
        let psi = {
            let mut v = vec![tomo_entropy::Complex::new(0.0, 0.0); n];
            v[0].re = 1.0;
            v
        };
        let r = check_maassen_uffink(&psi, &UnitaryMatrix::identity(n), &qft_matrix(n).unwrap()).unwrap();
        let ln_n = (n as f64).ln();
        ensure((r.rhs - ln_n).abs() < 1e-12, || format!("N={n}: rhs {} vs ln N", r.rhs))?;
        sweep(
            CampaignConfig::new(Inequality::Uu9, 1000, 200 + n as u64)
                .with_dims(vec![n])
                .with_ensemble(Ensemble::Pure),
        )?;
        sweep(CampaignConfig::new(Inequality::Uu5VsUu7, 1000, 300 + n as u64).with_dims(vec![n]))?;
    }
    Ok("N = 2..8".into())
}

/// 9. Same seed and config give byte-identical JSON.
fn reproducibility() -> Outcome {
    let configs = [
        CampaignConfig::new(Inequality::Ssa31, 500, 7),
        CampaignConfig::new(Inequality::Kk2, 500, 8).with_dims(vec![5]),
        CampaignConfig::new(Inequality::Cc5, 500, 9).with_dims(vec![3]),
    ];
    for cfg in &configs {
        let a = to_json_string(&run_campaign::<f64>(cfg).map_err(|e| e.to_string())?);
        let b = to_json_string(&run_campaign::<f64>(cfg).map_err(|e| e.to_string())?);
        ensure(a == b, || format!("{} differs between runs", cfg.inequality))?;
    }
    let cfg = HaarAverageConfig::<f64>::new(HaarAverage::Cc17, 3, 1000, 4);
    let a = to_json_string(&estimate_haar_average(&cfg).map_err(|e| e.to_string())?);
    let b = to_json_string(&estimate_haar_average(&cfg).map_err(|e| e.to_string())?);
    ensure(a == b, || "Haar average differs between runs".into())?;
    Ok(format!("{} configurations", configs.len() + 1))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("qubit saturation", qubit_saturation),
        ("mixed-qubit Fourier tomogram", mixed_qubit_fourier_tomogram),
        ("QFT-rotated diagonal qubit", qft_rotated_diagonal_qubit),
        ("minimum-entropy recovery", minimum_entropy_recovery),
        ("property sweeps", property_sweeps),
        ("Haar averages", haar_averages),
        ("Fourier-matrix structure", fourier_structure),
        ("Maassen-Uffink MUB case", maassen_uffink_mub),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("acceptance {}: PASS  {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {}: FAIL  {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
