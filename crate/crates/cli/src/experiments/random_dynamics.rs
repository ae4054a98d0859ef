//! Validity scan over random system-environment unitaries.
//!
//! Each trial draws `d_s` and `d_e` uniformly from `[2, dim]` and
//! `[2, dim_env]`, a random joint model and a Haar-random pure system
//! state, evolves for `tau` and evaluates every bound on the reduced orbit.
//!
//! CSV columns: `trial, d_s, d_e, tau, avg_speed, T_D, Sun, Sun*,
//! DelCampo, Deffner, Deffner*, deffner_validity, max_proven_ratio,
//! violation, status, Mondal`.

use rand::Rng;
use rayon::prelude::*;

use qsl_core::bounds::{compute_all, names, Evaluation, EvaluationOptions, Validity};
use qsl_core::dynamics::joint_evolution;
use qsl_core::ensembles::{haar_pure_state, random_joint_model, SeededRng};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::{Cell, Table};

use super::Outcome;

/// Name under which a Mondal bound plug-in is reported.
pub const MONDAL: &str = "Mondal";
pub const PLUGIN_ABSENT: &str = "plugin-absent";

const BOUND_COLUMNS: [&str; 6] = [
    names::T_D,
    names::SUN,
    names::SUN_STAR,
    names::DEL_CAMPO,
    names::DEFFNER,
    names::DEFFNER_STAR,
];

pub const COLUMNS: [&str; 16] = [
    "trial",
    "d_s",
    "d_e",
    "tau",
    "avg_speed",
    names::T_D,
    names::SUN,
    names::SUN_STAR,
    names::DEL_CAMPO,
    names::DEFFNER,
    names::DEFFNER_STAR,
    "deffner_validity",
    "max_proven_ratio",
    "violation",
    "status",
    MONDAL,
];

#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub trial: usize,
    pub d_s: usize,
    pub d_e: usize,
    /// The evaluation, or the reason the trial failed.
    pub result: std::result::Result<Evaluation, String>,
}

impl TrialRecord {
    pub fn violated(&self) -> bool {
        matches!(&self.result, Ok(e) if e.violations().next().is_some())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanParams {
    pub seed: u64,
    pub dim_max: usize,
    pub dim_env_max: usize,
    pub tau: f64,
    pub steps: usize,
}

impl From<&ExperimentConfig> for ScanParams {
    fn from(cfg: &ExperimentConfig) -> Self {
        ScanParams {
            seed: cfg.seed,
            dim_max: cfg.dim,
            dim_env_max: cfg.dim_env,
            tau: cfg.tau,
            steps: cfg.steps,
        }
    }
}

pub fn run_trial(params: &ScanParams, options: &EvaluationOptions, trial: usize) -> TrialRecord {
    let mut rng = SeededRng::new(params.seed).stream(trial as u64);
    let d_s = rng.gen_range(2..=params.dim_max);
    let d_e = rng.gen_range(2..=params.dim_env_max);
    let result = (|| {
        let model = random_joint_model(d_s, d_e, &mut rng)?;
        let rho0 = haar_pure_state(d_s, &mut rng)?;
        let orbit = joint_evolution(&model, &rho0, params.tau, params.steps)?;
        compute_all(&orbit.system, options)
    })()
    .map_err(|e| e.to_string());
    TrialRecord { trial, d_s, d_e, result }
}

pub fn scan(params: &ScanParams, options: &EvaluationOptions, trials: usize) -> Vec<TrialRecord> {
    (0..trials)
        .into_par_iter()
        .map(|k| run_trial(params, options, k))
        .collect()
}

fn row(r: &TrialRecord, tau: f64) -> Vec<Cell> {
    let mut row: Vec<Cell> = vec![r.trial.into(), r.d_s.into(), r.d_e.into(), tau.into()];
    match &r.result {
        Ok(e) => {
            row.push(e.avg_speed.into());
            for name in BOUND_COLUMNS {
                row.push(e.get(name).map(|b| b.value).into());
            }
            let validity = e.get(names::DEFFNER).map(|b| b.validity.to_string());
            row.push(validity.into());
            row.push(e.max_proven_ratio().into());
            row.push(usize::from(r.violated()).into());
            row.push("ok".into());
            row.push(match e.get(MONDAL) {
                Some(b) => b.value.into(),
                None => PLUGIN_ABSENT.into(),
            });
        }
        Err(msg) => {
            row.extend(std::iter::repeat_n(Cell::Empty, 9));
            row.push(format!("failed: {msg}").into());
            row.push(PLUGIN_ABSENT.into());
        }
    }
    row
}

pub fn run_with(cfg: &ExperimentConfig, options: &EvaluationOptions) -> Result<Outcome> {
    let params = ScanParams::from(cfg);
    let records = scan(&params, options, cfg.samples);
    let mut table = Table::new(&COLUMNS);
    for r in &records {
        table.push(row(r, cfg.tau));
    }
    let mut outcome = Outcome::new(table);
    outcome.failures = records.iter().filter(|r| r.result.is_err()).count();
    outcome.violations = records.iter().filter(|r| r.violated()).count();
    let max_ratio = records
        .iter()
        .filter_map(|r| r.result.as_ref().ok())
        .map(Evaluation::max_proven_ratio)
        .fold(0.0, f64::max);
    let heuristic_deffner = records
        .iter()
        .filter_map(|r| r.result.as_ref().ok())
        .filter(|e| e.get(names::DEFFNER).is_some_and(|b| b.validity == Validity::Heuristic))
        .count();
    outcome.summary.extend([
        format!("trials: {}", outcome.trials),
        format!("failures: {}", outcome.failures),
        format!("violations: {}", outcome.violations),
        format!("max_proven_ratio: {max_ratio:.16e}"),
        format!("deffner_heuristic_trials: {heuristic_deffner}"),
    ]);
    Ok(outcome)
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    run_with(cfg, &EvaluationOptions::default())
}
