//! Convergence and structural properties of orbits and speeds.

use proptest::prelude::*;
use qsl_core::bounds::{evaluate_all, t_d};
use qsl_core::dynamics::{
    depolarizing_orbit, integrate_lindblad, joint_evolution, propagate_unitary, DepolarizingSchedule,
    LindbladModel, Orbit,
};
use qsl_core::ensembles::{
    ginibre_state, gue_hamiltonian, haar_pure_state, haar_unitary, random_joint_model, random_lindblad_model,
    random_unital_lindblad_model, SeededRng,
};
use qsl_core::linalg::{self, hs_norm};
use qsl_core::metrics::hs_distance;
use qsl_core::speed::{orbit_speed_profile, overlap_speed_estimate, system_env_speed};
use qsl_core::DensityMatrix;

fn final_state_error(a: &Orbit, b: &Orbit) -> f64 {
    hs_norm(&(a.last().matrix() - b.last().matrix()))
}

#[test]
fn rk4_self_convergence_is_fourth_order() {
    let mut rng = SeededRng::new(11).stream(0);
    for d in [2, 3] {
        let model = random_lindblad_model(d, 2, &mut rng).unwrap();
        let rho0 = ginibre_state(d, d, &mut rng).unwrap();
        let orbits: Vec<Orbit> = [10, 20, 40]
            .iter()
            .map(|&n| integrate_lindblad(&model, &rho0, 1.0, n).unwrap())
            .collect();
        let order = (final_state_error(&orbits[0], &orbits[1]) / final_state_error(&orbits[1], &orbits[2])).log2();
        assert!((3.5..=4.5).contains(&order), "d = {d}: order {order}");
    }
}

/// Exact qubit dephasing from |+>: x(t) = exp(-2 gamma t), ||rho'|| = sqrt(2) gamma x(t).
fn dephased_plus(gamma: f64, t: f64) -> DensityMatrix {
    let x = (-2.0 * gamma * t).exp();
    DensityMatrix::new(linalg::from_real_rows(2, &[0.5, 0.5 * x, 0.5 * x, 0.5])).unwrap()
}

#[test]
fn overlap_estimator_is_second_order_on_dephasing() {
    let (gamma, t) = (1.0, 0.3);
    let error = |dt: f64| {
        let est = overlap_speed_estimate(&dephased_plus(gamma, t), &dephased_plus(gamma, t + dt), dt).unwrap();
        let exact = std::f64::consts::SQRT_2 * gamma * (-2.0 * gamma * (t + dt / 2.0)).exp();
        (est - exact).abs()
    };
    let dts = [0.04, 0.02, 0.01, 0.005];
    for w in dts.windows(2) {
        let order = (error(w[0]) / error(w[1])).log2();
        assert!((1.5..=2.5).contains(&order), "order {order}");
    }
}

#[test]
fn overlap_estimator_is_exact_on_linear_depolarizing() {
    let rho0 = DensityMatrix::basis(3, 0).unwrap();
    let sched = DepolarizingSchedule::linear(1.0, 0.0);
    let orbit = depolarizing_orbit(&rho0, &sched, 1.0, 10).unwrap();
    let exact = orbit_speed_profile(&orbit).unwrap().average;
    let s = orbit.states();
    for i in 0..s.len() - 1 {
        let est = overlap_speed_estimate(&s[i], &s[i + 1], orbit.step()).unwrap();
        assert!((est - exact).abs() < 1e-12);
    }
}

#[test]
fn unital_dynamics_never_increases_purity() {
    let mut rng = SeededRng::new(12).stream(0);
    for d in 2..=4 {
        let model = random_unital_lindblad_model(d, 3, &mut rng).unwrap();
        let rho0 = haar_pure_state(d, &mut rng).unwrap();
        let orbit = integrate_lindblad(&model, &rho0, 2.0, 400).unwrap();
        let purities: Vec<f64> = orbit.states().iter().map(|s| s.purity()).collect();
        assert!(purities.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }
}

#[test]
fn mixed_orbit_equals_orbit_of_mixed_state() {
    // Unital dynamics is linear with fixed point 1/d, so evolving the
    // mixture gives the mixture of the evolution.
    let mut rng = SeededRng::new(13).stream(0);
    let model = random_unital_lindblad_model(3, 2, &mut rng).unwrap();
    let rho0 = ginibre_state(3, 3, &mut rng).unwrap();
    let eps = 0.4;
    let orbit = integrate_lindblad(&model, &rho0, 1.0, 200).unwrap();
    let mixed0 = qsl_core::dynamics::depolarize_state(&rho0, eps).unwrap();
    let mixed = integrate_lindblad(&model, &mixed0, 1.0, 200).unwrap();
    for (a, b) in orbit.states().iter().zip(mixed.states()) {
        let expected = qsl_core::dynamics::depolarize_state(a, eps).unwrap();
        assert!(hs_norm(&(expected.matrix() - b.matrix())) < 1e-12);
    }
    let va = orbit_speed_profile(&orbit).unwrap().average;
    let vb = orbit_speed_profile(&mixed).unwrap().average;
    assert!((vb - eps * va).abs() < 1e-12);
}

#[test]
fn depolarizing_speed_scales_with_rate() {
    let rho0 = DensityMatrix::basis(2, 0).unwrap();
    for rate in [0.5, 1.0, 2.0] {
        let o = depolarizing_orbit(&rho0, &DepolarizingSchedule::exponential(rate), 1.0, 100).unwrap();
        let p = orbit_speed_profile(&o).unwrap();
        // ||rho'|| = rate exp(-rate t) ||rho0 - 1/2|| and ||rho0 - 1/2|| = 1/sqrt(2).
        for (&t, &v) in p.times.iter().zip(&p.values) {
            let exact = rate * (-rate * t).exp() / std::f64::consts::SQRT_2;
            assert!((v - exact).abs() < 1e-12);
        }
    }
}

#[test]
fn time_reversal_preserves_average_speed() {
    let mut rng = SeededRng::new(14).stream(0);
    let model = random_lindblad_model(3, 3, &mut rng).unwrap();
    let rho0 = haar_pure_state(3, &mut rng).unwrap();
    let orbit = integrate_lindblad(&model, &rho0, 1.0, 300).unwrap();
    let forward = orbit_speed_profile(&orbit).unwrap().average;
    let backward = orbit_speed_profile(&orbit.reversed()).unwrap().average;
    assert!((forward - backward).abs() < 1e-14 * forward.max(1.0));
    let fd_forward = orbit_speed_profile(&orbit.without_rhs()).unwrap().average;
    let fd_backward = orbit_speed_profile(&orbit.reversed().without_rhs()).unwrap().average;
    assert!((fd_forward - fd_backward).abs() < 1e-12);
}

#[test]
fn system_env_speed_matches_finite_differences() {
    let mut rng = SeededRng::new(15).stream(0);
    let model = random_joint_model(2, 3, &mut rng).unwrap();
    let rho0 = haar_pure_state(2, &mut rng).unwrap();
    let jo = joint_evolution(&model, &rho0, 1.0, 2000).unwrap();
    let fd = qsl_core::speed::orbit_derivatives(&jo.system.without_rhs()).unwrap();
    for i in [1, 500, 1000, 1999] {
        let (exact, split) = system_env_speed(&model, &jo.joint_states[i]).unwrap();
        assert!((hs_norm(&fd[i]) - exact).abs() < 1e-5, "step {i}");
        assert!(exact <= split + 1e-12);
    }
}

#[test]
fn haar_first_column_is_uniform() {
    // |U_11|^2 is Beta(1, d - 1) distributed: P(|U_11|^2 <= s) = 1 - (1 - s)^(d-1).
    let d = 3;
    let n = 4000;
    let mut samples: Vec<f64> = (0..n)
        .map(|k| {
            let mut rng = SeededRng::new(16).stream(k);
            haar_unitary(d, &mut rng).unwrap()[(0, 0)].norm_sqr()
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    let ks = samples
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let cdf = 1.0 - (1.0 - s).powi(d as i32 - 1);
            let lo = i as f64 / n as f64;
            let hi = (i + 1) as f64 / n as f64;
            (cdf - lo).abs().max((hi - cdf).abs())
        })
        .fold(0.0, f64::max);
    // 1.63 / sqrt(n) is the 1% critical value.
    assert!(ks < 1.63 / (n as f64).sqrt(), "KS statistic {ks}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chord_never_exceeds_arc(d in 2usize..=4, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed).stream(0);
        let model = random_lindblad_model(d, 2, &mut rng).unwrap();
        let rho0 = ginibre_state(d, d, &mut rng).unwrap();
        let orbit = integrate_lindblad(&model, &rho0, 1.0, 200).unwrap();
        let avg = orbit_speed_profile(&orbit).unwrap().average;
        let r = t_d(orbit.initial(), orbit.last(), avg).unwrap();
        prop_assert!(r.value <= orbit.tau() * (1.0 + 1e-6));
        prop_assert!(evaluate_all(&orbit).is_ok());
    }

    #[test]
    fn t_d_is_symmetric(d in 2usize..=5, seed in any::<u64>(), speed in 0.1f64..10.0) {
        let mut rng = SeededRng::new(seed).stream(1);
        let rho = ginibre_state(d, d, &mut rng).unwrap();
        let sigma = ginibre_state(d, d, &mut rng).unwrap();
        let a = t_d(&rho, &sigma, speed).unwrap().value;
        let b = t_d(&sigma, &rho, speed).unwrap().value;
        prop_assert!((a - b).abs() < 1e-14);
        prop_assert!((a - hs_distance(&rho, &sigma).unwrap() / speed).abs() < 1e-14);
    }

    #[test]
    fn unitary_orbits_keep_purity(d in 2usize..=4, seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed).stream(2);
        let h = gue_hamiltonian(d, &mut rng).unwrap();
        let rho0 = ginibre_state(d, d, &mut rng).unwrap();
        let orbit = propagate_unitary(|_| h.clone(), &rho0, 1.0, 200).unwrap();
        let p0 = rho0.purity();
        for s in orbit.states() {
            prop_assert!((s.purity() - p0).abs() < 1e-8);
        }
    }
}

#[test]
fn dephasing_speed_meets_closed_form_bound() {
    let model = LindbladModel::qubit_dephasing(0.7).unwrap();
    let plus = DensityMatrix::pure(&[num_complex::Complex64::new(1.0, 0.0); 2]).unwrap();
    let orbit = integrate_lindblad(&model, &plus, 1.0, 200).unwrap();
    let p = orbit_speed_profile(&orbit).unwrap();
    let bound = qsl_core::speed::dephasing_speed_bound(0.7).unwrap();
    assert!(p.max() <= bound + 1e-12);
    assert!((p.values[0] - bound).abs() < 1e-12);
}
