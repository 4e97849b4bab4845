//! Property tests for tomograms, entropies and the inequality checkers.

use proptest::prelude::*;

use tomo_entropy::entropy::{relative_entropy, renyi, shannon, von_neumann, RenyiOrder};
use tomo_entropy::inequalities::check_renyi_qft_rotation;
use tomo_entropy::linalg::{eig_hermitian, haar_unitary, DensityMatrix, UnitaryMatrix};
use tomo_entropy::rng::task_rng;
use tomo_entropy::tomography::{joint_tomogram, marginal, tomogram, Tomogram};

fn random_pair(n: usize, seed: u64) -> (DensityMatrix<f64>, UnitaryMatrix<f64>) {
    let mut rng = task_rng(seed, 0);
    let rho = DensityMatrix::random_mixed(n, &mut rng).unwrap();
    let u = haar_unitary(n, &mut rng).unwrap();
    (rho, u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tomogram_is_a_distribution(n in 1usize..=8, seed in any::<u64>()) {
        let (rho, u) = random_pair(n, seed);
        let w = tomogram(&rho, &u).unwrap();
        prop_assert!(w.probs().iter().all(|&p| p >= 0.0));
        prop_assert!((w.probs().iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let h = shannon(&w).value;
        prop_assert!(h >= -1e-14 && h <= (n as f64).ln() + 1e-12);
    }

    #[test]
    fn tomogram_is_linear_in_the_state(n in 2usize..=6, seed in any::<u64>(), p in 0.0f64..=1.0) {
        let (rho1, u) = random_pair(n, seed);
        let rho2 = DensityMatrix::random_mixed(n, &mut task_rng(seed, 1)).unwrap();
        let mixed = tomogram(&rho1.mix(&rho2, p).unwrap(), &u).unwrap();
        let w1 = tomogram(&rho1, &u).unwrap();
        let w2 = tomogram(&rho2, &u).unwrap();
        for ((m, a), b) in mixed.probs().iter().zip(w1.probs()).zip(w2.probs()) {
            prop_assert!((m - (p * a + (1.0 - p) * b)).abs() < 1e-12);
        }
    }

    #[test]
    fn local_marginal_is_tomogram_of_reduced_state(d1 in 2usize..=3, d2 in 2usize..=3, seed in any::<u64>()) {
        let mut rng = task_rng(seed, 0);
        let rho = DensityMatrix::<f64>::random_mixed(d1 * d2, &mut rng)
            .unwrap()
            .with_subsystems(vec![d1, d2])
            .unwrap();
        let u1 = haar_unitary(d1, &mut rng).unwrap();
        let u2 = haar_unitary(d2, &mut rng).unwrap();
        let joint = joint_tomogram(&rho, &u1.kron(&u2)).unwrap();
        for (keep, u) in [(0, &u1), (1, &u2)] {
            let lhs = marginal(&joint, &[keep]).unwrap();
            let rhs = tomogram(&rho.partial_trace(&[keep]).unwrap(), u).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn eigenbasis_tomogram_entropy_is_von_neumann(n in 1usize..=8, seed in any::<u64>()) {
        let (rho, u) = random_pair(n, seed);
        let spectrum = eig_hermitian(&rho).unwrap();
        let svn = von_neumann(&rho).unwrap().value;
        let at_eigenbasis = shannon(&tomogram(&rho, &spectrum.eigenvectors).unwrap()).value;
        prop_assert!((svn - at_eigenbasis).abs() < 1e-10);
        // and no other rotation does better
        prop_assert!(shannon(&tomogram(&rho, &u).unwrap()).value >= svn - 1e-10);
    }

    #[test]
    fn renyi_is_nonincreasing_in_order(n in 2usize..=8, seed in any::<u64>(), a in 0.1f64..5.0, b in 0.1f64..5.0) {
        let (rho, u) = random_pair(n, seed);
        let w = tomogram(&rho, &u).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let r_lo = renyi(&w, RenyiOrder::new(lo).unwrap()).value;
        let r_hi = renyi(&w, RenyiOrder::new(hi).unwrap()).value;
        prop_assert!(r_lo >= r_hi - 1e-12);
    }

    #[test]
    fn relative_entropy_is_nonnegative(n in 2usize..=6, seed in any::<u64>()) {
        let (rho, u) = random_pair(n, seed);
        let (sigma, _) = random_pair(n, seed ^ 0x5555);
        let w1 = tomogram(&rho, &u).unwrap();
        let w2 = tomogram(&sigma, &u).unwrap();
        prop_assert!(relative_entropy(&w1, &w2).unwrap().value >= -1e-12);
        prop_assert!(relative_entropy(&w1, &w1).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn renyi_fourier_bound_holds_for_pure_states(n in 2usize..=6, seed in any::<u64>(), alpha in 0.51f64..6.0) {
        let mut rng = task_rng(seed, 0);
        let rho = DensityMatrix::<f64>::random_pure(n, &mut rng).unwrap();
        let u = haar_unitary(n, &mut rng).unwrap();
        let r = check_renyi_qft_rotation(&rho, &u, RenyiOrder::new(alpha).unwrap()).unwrap();
        prop_assert!(r.is_asserted());
        prop_assert!(r.satisfied, "{r:?}");
    }

    #[test]
    fn f32_tracks_f64(n in 2usize..=5, seed in any::<u64>()) {
        let (rho, u) = random_pair(n, seed);
        let rho32 = DensityMatrix::<f32>::new(rho.matrix().cast(), None).unwrap();
        let u32_ = UnitaryMatrix::<f32>::new(u.matrix().cast()).unwrap();
        let h64 = shannon(&tomogram(&rho, &u).unwrap()).value;
        let h32 = shannon(&tomogram(&rho32, &u32_).unwrap()).value;
        prop_assert!((h64 - h32 as f64).abs() < 1e-4);
    }
}

#[test]
fn haar_first_entry_has_mean_one_over_n() {
    for n in [2usize, 3, 5] {
        let samples = 20_000;
        let mean = (0..samples)
            .map(|i| {
                let u = haar_unitary::<f64, _>(n, &mut task_rng(11, i)).unwrap();
                u.matrix()[(0, 0)].norm_sqr()
            })
            .sum::<f64>()
            / samples as f64;
        // Var |u00|^2 = (N-1)/(N^2 (N+1)); allow 5 standard errors
        let se = (((n - 1) as f64) / ((n * n * (n + 1)) as f64) / samples as f64).sqrt();
        assert!((mean - 1.0 / n as f64).abs() < 5.0 * se, "N={n}: mean {mean}");
    }
}

#[test]
fn maximally_mixed_tomogram_is_uniform_for_any_rotation() {
    let rho = DensityMatrix::<f64>::maximally_mixed(4);
    let u = haar_unitary(4, &mut task_rng(1, 0)).unwrap();
    let w = tomogram(&rho, &u).unwrap();
    assert!(w.max_abs_diff(&Tomogram::uniform(4)) < 1e-14);
}
