//! Single-orbit commands: `simulate` traces an orbit, `bounds-eval` reports
//! every bound between its endpoints.
//!
//! `simulate` columns: `step, t, purity, speed, distance`, where `distance`
//! is the Hilbert-Schmidt distance from the initial state.
//! `bounds-eval` columns: `bound, distance_term, speed_term, value, ratio,
//! validity, notes`.

use qsl_core::bounds::{compute_all, EvaluationOptions};
use qsl_core::dynamics::{
    depolarizing_orbit, integrate_lindblad, joint_evolution, propagate_unitary, DepolarizingSchedule,
    LindbladModel, Orbit,
};
use qsl_core::ensembles::{gue_hamiltonian, haar_pure_state, random_joint_model, random_lindblad_model, SeededRng};
use qsl_core::metrics::hs_distance;
use qsl_core::speed::orbit_speed_profile;
use qsl_core::DensityMatrix;

use num_complex::Complex64;

use crate::config::{ExperimentConfig, Model};
use crate::error::Result;
use crate::output::Table;

use super::Outcome;

/// Jump operators used by the random Lindblad model, capped at `d^2 - 1`.
pub const RANDOM_CHANNELS: usize = 3;

/// Builds the configured orbit. Random models draw from stream 0 of the
/// configured seed.
pub fn build_orbit(cfg: &ExperimentConfig) -> Result<Orbit> {
    let mut rng = SeededRng::new(cfg.seed).stream(0);
    let d = cfg.dim;
    let orbit = match cfg.model {
        Model::Dephasing => {
            let plus = DensityMatrix::pure(&[Complex64::new(1.0, 0.0); 2])?;
            integrate_lindblad(&LindbladModel::qubit_dephasing(cfg.gamma)?, &plus, cfg.tau, cfg.steps)?
        }
        Model::Depolarizing => {
            let schedule = DepolarizingSchedule::linear(cfg.tau, 0.0);
            depolarizing_orbit(&DensityMatrix::basis(d, 0)?, &schedule, cfg.tau, cfg.steps)?
        }
        Model::Unitary => {
            let h = gue_hamiltonian(d, &mut rng)?;
            let rho0 = haar_pure_state(d, &mut rng)?;
            propagate_unitary(|_| h.clone(), &rho0, cfg.tau, cfg.steps)?
        }
        Model::RandomLindblad => {
            let model = random_lindblad_model(d, RANDOM_CHANNELS.min(d * d - 1), &mut rng)?;
            let rho0 = haar_pure_state(d, &mut rng)?;
            integrate_lindblad(&model, &rho0, cfg.tau, cfg.steps)?
        }
        Model::Joint => {
            let model = random_joint_model(d, cfg.dim_env, &mut rng)?;
            let rho0 = haar_pure_state(d, &mut rng)?;
            joint_evolution(&model, &rho0, cfg.tau, cfg.steps)?.system
        }
    };
    Ok(orbit)
}

pub fn run_simulate(cfg: &ExperimentConfig) -> Result<Outcome> {
    let orbit = build_orbit(cfg)?;
    let profile = orbit_speed_profile(&orbit)?;
    let mut table = Table::new(&["step", "t", "purity", "speed", "distance"]);
    for (k, (state, (&t, &v))) in orbit
        .states()
        .iter()
        .zip(profile.times.iter().zip(&profile.values))
        .enumerate()
    {
        table.push(vec![
            k.into(),
            t.into(),
            state.purity().into(),
            v.into(),
            hs_distance(orbit.initial(), state)?.into(),
        ]);
    }
    let mut outcome = Outcome::new(table);
    outcome.summary.push(format!("avg_speed: {:.16e}", profile.average));
    Ok(outcome)
}

pub fn run_bounds_eval(cfg: &ExperimentConfig) -> Result<Outcome> {
    let orbit = build_orbit(cfg)?;
    let options = EvaluationOptions {
        deffner_operator_norm: true,
        ..Default::default()
    };
    let evaluation = compute_all(&orbit, &options)?;
    let mut table = Table::new(&["bound", "distance_term", "speed_term", "value", "ratio", "validity", "notes"]);
    for r in &evaluation.reports {
        table.push(vec![
            r.name.as_str().into(),
            r.distance_term.into(),
            r.speed_term.into(),
            r.value.into(),
            (r.value / evaluation.elapsed).into(),
            r.validity.to_string().into(),
            r.notes.as_str().into(),
        ]);
    }
    let mut outcome = Outcome::new(table);
    outcome.violations = evaluation.violations().count();
    outcome
        .summary
        .push(format!("max_proven_ratio: {:.16e}", evaluation.max_proven_ratio()));
    Ok(outcome)
}
