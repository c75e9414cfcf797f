//! Command-line front end: parse an experiment config, run the requested
//! engine, write machine-readable results.
//!
//! Exit codes: 0 success, 2 config error, 3 distillation extinguished,
//! 4 numerical failure (defective propagator and the like).

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{ExperimentConfig, OutputFormat};
use output::OutputTarget;

/// Error with a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or arguments (exit 2).
    Config(String),
    /// Filesystem failure (exit 1).
    Io(String),
    /// Engine failure (exit 2, 3 or 4 depending on the error).
    Engine(zeno_distill::Error),
}

impl From<zeno_distill::Error> for CliError {
    fn from(e: zeno_distill::Error) -> Self {
        CliError::Engine(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use zeno_distill::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 1,
            CliError::Engine(e) => match e {
                E::DistillationExtinguished { .. } => 3,
                E::NotHermitian { .. }
                | E::Defective { .. }
                | E::NoConvergence { .. }
                | E::NotContraction { .. }
                | E::NoSurvivingSubspace
                | E::InconsistentStatistics { .. } => 4,
                _ => 2,
            },
        }
    }
}

#[derive(Parser)]
#[command(
    name = "zeno-distill",
    version,
    about = "Measurement-conditioned distillation with freezing-coupling steering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides output.path in the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Base seed override for trajectory commands.
    #[arg(long)]
    seed: Option<u64>,
    /// Output format: csv or json (overrides output.format in the config).
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the N-step conditioned evolution and report per-step statistics.
    Distill(CommonArgs),
    /// Classify the survival channels of the conditional propagator.
    Channels(CommonArgs),
    /// Design parameters realizing a prefixed target subspace.
    Steer(CommonArgs),
    /// Sweep freezing strength (zeno) or the coupling hierarchy.
    Sweep(CommonArgs),
    /// Monte Carlo trajectories against the engine's success prediction.
    Trajectories(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    let (args, runner): (&CommonArgs, fn(&ExperimentConfig, &OutputTarget) -> _) =
        match &cli.command {
            Command::Distill(a) => (a, commands::cmd_distill),
            Command::Channels(a) => (a, commands::cmd_channels),
            Command::Steer(a) => (a, commands::cmd_steer),
            Command::Sweep(a) => (a, commands::cmd_sweep),
            Command::Trajectories(a) => (a, commands::cmd_trajectories),
        };

    let mut config = ExperimentConfig::from_file(&args.config)?;
    if let Some(seed) = args.seed {
        match config.trajectories.as_mut() {
            Some(section) => section.base_seed = seed,
            None => {
                return Err(CliError::Config(
                    "--seed given but the config has no trajectories section".into(),
                ))
            }
        }
    }
    let target = OutputTarget::resolve(&config, args.out.as_deref(), args.format);
    runner(&config, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use zeno_distill::Error as E;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(CliError::Io("x".into()).exit_code(), 1);
        assert_eq!(CliError::Engine(E::DistillationExtinguished { step: 3 }).exit_code(), 3);
        assert_eq!(CliError::Engine(E::Defective { index: 0, overlap: 0.0 }).exit_code(), 4);
        assert_eq!(CliError::Engine(E::NotContraction { sigma: 1.5 }).exit_code(), 4);
        assert_eq!(CliError::Engine(E::NotHermitian { deviation: 1.0 }).exit_code(), 4);
        assert_eq!(CliError::Engine(E::NoSurvivingSubspace).exit_code(), 4);
        assert_eq!(CliError::Engine(E::DarkTarget { n_bar: 1, value: 0.0 }).exit_code(), 2);
        assert_eq!(CliError::Engine(E::NoZeroExists { n_bar: 0 }).exit_code(), 2);
        assert_eq!(CliError::Engine(E::InvalidParameter("x".into())).exit_code(), 2);
    }
}
