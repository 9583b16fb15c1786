//! `nckit`: design reports, noise analysis, lock simulation and alignment
//! for near-concentric cavities.
//!
//! Exit codes: 0 success, 1 other I/O failure, 2 configuration, 3 trace
//! ingestion, 4 loop instability, 5 actuator saturation under `--strict`.

mod commands;
mod config;
mod error;
mod quantity;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{align, analyze, design, simulate, synth};
use crate::config::ProjectConfig;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "nckit", version, about = "Near-concentric cavity toolkit")]
struct Cli {
    /// Project configuration (JSON). All fields are optional.
    #[arg(long, global = true, env = "NCKIT_CONFIG")]
    config: Option<PathBuf>,
    /// Seed for commands that draw random numbers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cavity spectrum, mode geometry, noise limit and coupling report.
    Design(design::DesignArgs),
    /// Length-noise density and band budget of a trace.
    Analyze(analyze::AnalyzeArgs),
    /// Loop margins and closed-loop residual of a noise trace.
    Simulate(simulate::SimulateArgs),
    /// Mix length and tip/tilt commands into actuator voltages, or back.
    Align(align::AlignArgs),
    /// Synthetic length-noise trace from the reference spectrum.
    Synth(synth::SynthArgs),
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = ProjectConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Design(a) => design::run(&cfg, a),
        Command::Analyze(a) => analyze::run(&cfg, a),
        Command::Simulate(a) => simulate::run(&cfg, a),
        Command::Align(a) => align::run(&cfg, a),
        Command::Synth(a) => synth::run(cli.seed, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nckit: {e}");
            e.exit_code()
        }
    }
}
