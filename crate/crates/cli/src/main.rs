//! `ampcoh`: command-line runner for amplitude-amplification coherence
//! experiments. Three subcommands cover the common workflows:
//!
//! * `scenario` — tabulate an analytic reference family (success
//!   probability, coherence quantifiers, two-sided bounds) per iteration;
//! * `simulate` — run an arbitrary configuration through the direct
//!   iteration, the closed-form spectral engine, or both with a per-step
//!   cross-check;
//! * `bounds-sweep` — stress every bound with seeded random states and
//!   fail loudly if any slack goes negative.
//!
//! Every output file embeds its run manifest, and identical manifests
//! produce byte-identical files. Exit codes: 0 success, 2 invalid input,
//! 3 closed-form engine unavailable, 1 I/O failure or violated bound.

mod emit;
mod error;
mod inputs;
mod scenario;
mod simulate;
mod sweep_cmd;

use clap::{Parser, Subcommand, ValueEnum};

use crate::emit::Format;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ampcoh",
    version,
    about = "Amplitude-amplification coherence laboratory",
    propagate_version = true
)]
struct Cli {
    /// Cap the worker-thread pool (default: one thread per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate an analytic scenario with bounds per iteration.
    Scenario(scenario::ScenarioArgs),
    /// Run an arbitrary configuration through one or both engines.
    Simulate(simulate::SimulateArgs),
    /// Stress every coherence bound with seeded random states.
    BoundsSweep(sweep_cmd::SweepArgs),
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".to_string()));
        }
        ampcoh_core::par::configure_jobs(jobs)
            .map_err(|e| CliError::Usage(format!("cannot configure {jobs} jobs: {e}")))?;
    }
    match cli.command {
        Command::Scenario(args) => scenario::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::BoundsSweep(args) => sweep_cmd::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
