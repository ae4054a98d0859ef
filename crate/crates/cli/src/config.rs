//! Experiment configuration: per-experiment defaults, then a JSON file,
//! then command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    RatioCurves,
    DeffnerMap,
    EnsembleCompare,
    RandomDynamics,
    Showcase,
    Simulate,
    BoundsEval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

/// Dynamics used by `simulate` and `bounds-eval`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Qubit pure dephasing from |+>.
    #[default]
    Dephasing,
    /// Linear depolarizing from |0> to the maximally mixed state at `tau`.
    Depolarizing,
    /// Static GUE Hamiltonian from a Haar-random pure state.
    Unitary,
    /// Random Lindblad generator from a Haar-random pure state.
    RandomLindblad,
    /// Random system-environment unitary, reduced to the system.
    Joint,
}

/// Settings that may come from the config file or from flags. Unset
/// fields fall back to the per-experiment defaults.
#[derive(Debug, Clone, Default, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// System dimension, or the largest one sampled.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Environment dimension, or the largest one sampled.
    #[arg(long)]
    pub dim_env: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Integration steps over `[0, tau]`.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Grid resolution: quadrature cells per axis, or points per curve.
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Dephasing rate.
    #[arg(long)]
    pub gamma: Option<f64>,
}

impl Overrides {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config file: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn merged(self, other: Overrides) -> Overrides {
        Overrides {
            dim: other.dim.or(self.dim),
            dim_env: other.dim_env.or(self.dim_env),
            samples: other.samples.or(self.samples),
            steps: other.steps.or(self.steps),
            tau: other.tau.or(self.tau),
            seed: other.seed.or(self.seed),
            resolution: other.resolution.or(self.resolution),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
            model: other.model.or(self.model),
            gamma: other.gamma.or(self.gamma),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub dim: usize,
    pub dim_env: usize,
    pub samples: usize,
    pub steps: usize,
    pub tau: f64,
    pub seed: u64,
    pub resolution: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub model: Model,
    pub gamma: f64,
}

pub const MIN_RESOLUTION: usize = 16;

impl ExperimentConfig {
    pub fn defaults(experiment: Experiment) -> Self {
        use Experiment::*;
        let dim = match experiment {
            RatioCurves => 64,
            DeffnerMap => 20,
            EnsembleCompare => 6,
            RandomDynamics => 3,
            Showcase | Simulate | BoundsEval => 2,
        };
        let samples = match experiment {
            EnsembleCompare => 100_000,
            RandomDynamics => 500,
            _ => 1,
        };
        let resolution = match experiment {
            RatioCurves => 101,
            _ => 400,
        };
        ExperimentConfig {
            experiment,
            dim,
            dim_env: if experiment == RandomDynamics { 3 } else { 2 },
            samples,
            steps: 1000,
            tau: 1.0,
            seed: 1,
            resolution,
            out: None,
            format: Format::Csv,
            model: Model::Dephasing,
            gamma: 1.0,
        }
    }

    pub fn resolve(experiment: Experiment, o: Overrides) -> Result<Self> {
        let d = Self::defaults(experiment);
        let cfg = ExperimentConfig {
            experiment,
            dim: o.dim.unwrap_or(d.dim),
            dim_env: o.dim_env.unwrap_or(d.dim_env),
            samples: o.samples.unwrap_or(d.samples),
            steps: o.steps.unwrap_or(d.steps),
            tau: o.tau.unwrap_or(d.tau),
            seed: o.seed.unwrap_or(d.seed),
            resolution: o.resolution.unwrap_or(d.resolution),
            out: o.out.or(d.out),
            format: o.format.unwrap_or(d.format),
            model: o.model.unwrap_or(d.model),
            gamma: o.gamma.unwrap_or(d.gamma),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.samples < 1 {
            return fail("samples must be at least 1".into());
        }
        if self.resolution < MIN_RESOLUTION {
            return fail(format!("resolution must be at least {MIN_RESOLUTION}"));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return fail(format!("tau must be positive, got {}", self.tau));
        }
        if self.steps < 1 {
            return fail("steps must be at least 1".into());
        }
        if self.dim < 2 || self.dim_env < 2 {
            return fail("dimensions must be at least 2".into());
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return fail(format!("gamma must be non-negative, got {}", self.gamma));
        }
        if self.experiment == Experiment::RandomDynamics && (self.dim > 10 || self.dim_env > 10) {
            return fail("random-dynamics samples dimensions from [2, 10]".into());
        }
        let uses_model = matches!(self.experiment, Experiment::Simulate | Experiment::BoundsEval);
        if uses_model && self.model == Model::Dephasing && self.dim != 2 {
            return fail("the dephasing model is a qubit model; use --dim 2".into());
        }
        Ok(())
    }
}
