//! Experiment harness for the `qsl` command.
//!
//! Each subcommand maps to a function in [`experiments`] that returns a
//! [`output::Table`] plus summary lines. Trials draw from per-trial random
//! streams and results are gathered by index, so a fixed seed gives
//! byte-identical output regardless of thread count.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use config::{Experiment, ExperimentConfig, Format, Model, Overrides};
pub use error::{exit, CliError, Result};
pub use experiments::{run, Outcome};
