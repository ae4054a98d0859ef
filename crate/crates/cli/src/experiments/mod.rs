//! The experiments behind each `qsl` subcommand.

pub mod deffner_map;
pub mod ensemble;
pub mod random_dynamics;
pub mod ratio_curves;
pub mod showcase;
pub mod simulate;

use crate::config::{Experiment, ExperimentConfig};
use crate::error::{exit, Result};
use crate::output::Table;

/// Largest tolerated fraction of failed trials.
pub const MAX_FAILURE_RATE: f64 = 0.01;

/// Result table plus the counts that decide the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    /// Human-readable `key: value` lines.
    pub summary: Vec<String>,
    pub trials: usize,
    pub failures: usize,
    pub violations: usize,
}

impl Outcome {
    pub fn new(table: Table) -> Self {
        let trials = table.rows.len();
        Outcome {
            table,
            summary: Vec::new(),
            trials,
            failures: 0,
            violations: 0,
        }
    }

    pub fn failure_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.failures as f64 / self.trials as f64
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            exit::BOUND_VIOLATION
        } else if self.failure_rate() > MAX_FAILURE_RATE {
            exit::INTEGRATION_FAILURES
        } else {
            exit::SUCCESS
        }
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    match cfg.experiment {
        Experiment::RatioCurves => ratio_curves::run(cfg),
        Experiment::DeffnerMap => deffner_map::run(cfg),
        Experiment::EnsembleCompare => ensemble::run(cfg),
        Experiment::RandomDynamics => random_dynamics::run(cfg),
        Experiment::Showcase => showcase::run(cfg),
        Experiment::Simulate => simulate::run_simulate(cfg),
        Experiment::BoundsEval => simulate::run_bounds_eval(cfg),
    }
}
