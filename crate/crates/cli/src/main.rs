use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qsl_cli::{Experiment, ExperimentConfig, Outcome, Overrides};

/// Compare quantum speed limit bounds on analytic and random inputs.
#[derive(Parser)]
#[command(name = "qsl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound ratios against tr[rho sigma] for pure rho.
    RatioCurves(Args),
    /// Probability map of T_D beating the sub-fidelity Deffner bound.
    DeffnerMap(Args),
    /// Numerator comparison on Ginibre and Bures state pairs.
    EnsembleCompare(Args),
    /// Validity scan over random system-environment unitaries.
    RandomDynamics(Args),
    /// Saturating and non-saturating reference orbits.
    Showcase(Args),
    /// Trace purity, speed and distance along one orbit.
    Simulate(Args),
    /// Evaluate every bound between the endpoints of one orbit.
    BoundsEval(Args),
}

#[derive(clap::Args)]
struct Args {
    /// JSON file with default settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

impl Command {
    fn split(self) -> (Experiment, Args) {
        match self {
            Command::RatioCurves(a) => (Experiment::RatioCurves, a),
            Command::DeffnerMap(a) => (Experiment::DeffnerMap, a),
            Command::EnsembleCompare(a) => (Experiment::EnsembleCompare, a),
            Command::RandomDynamics(a) => (Experiment::RandomDynamics, a),
            Command::Showcase(a) => (Experiment::Showcase, a),
            Command::Simulate(a) => (Experiment::Simulate, a),
            Command::BoundsEval(a) => (Experiment::BoundsEval, a),
        }
    }
}

fn resolve(experiment: Experiment, args: Args) -> qsl_cli::Result<ExperimentConfig> {
    let file = match &args.config {
        Some(path) => Overrides::from_file(path)?,
        None => Overrides::default(),
    };
    ExperimentConfig::resolve(experiment, file.merged(args.overrides))
}

fn write(cfg: &ExperimentConfig, outcome: &Outcome) -> qsl_cli::Result<()> {
    match &cfg.out {
        Some(path) => {
            let file = File::create(path)?;
            outcome.table.write(cfg.format, BufWriter::new(file))
        }
        None => outcome.table.write(cfg.format, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let (experiment, args) = Cli::parse().command.split();
    let result = resolve(experiment, args).and_then(|cfg| {
        let outcome = qsl_cli::run(&cfg)?;
        write(&cfg, &outcome)?;
        Ok(outcome)
    });
    let code = match result {
        Ok(outcome) => {
            let mut err = io::stderr().lock();
            for line in &outcome.summary {
                let _ = writeln!(err, "{line}");
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("qsl: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
