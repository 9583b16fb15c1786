use std::path::PathBuf;

use clap::Args;
use nckit_core::noise::{synthesize, write_trace, ReferenceSpectrum, Unit};

use crate::error::{config, io, CliError};
use crate::quantity;

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Trace length in seconds.
    #[arg(long, default_value_t = 2.0)]
    pub duration: f64,
    #[arg(long, value_parser = quantity::frequency, default_value = "100kHz")]
    pub sample_rate: f64,
    /// Total RMS of the reference spectrum.
    #[arg(long, value_parser = quantity::length, default_value = "0.36A")]
    pub rms: f64,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Writes a length-noise trace drawn from the reference spectrum.
pub fn run(seed: u64, args: &SynthArgs) -> Result<(), CliError> {
    let spectrum = ReferenceSpectrum {
        total_rms: args.rms,
        ..ReferenceSpectrum::default()
    };
    let trace = synthesize(&spectrum.model(), args.sample_rate, args.duration, seed, Unit::Meter)
        .map_err(|e| config("synth", e))?;
    match &args.out {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| io(p, e))?;
            write_trace(&trace, std::io::BufWriter::new(file)).map_err(|e| io(p, e))
        }
        None => write_trace(&trace, std::io::stdout().lock()).map_err(|e| CliError::Other(e.to_string())),
    }
}
