pub mod align;
pub mod analyze;
pub mod design;
pub mod simulate;
pub mod synth;

use std::path::PathBuf;

use clap::Args;
use nckit_core::noise::{error_to_length, ingest_trace, ColumnSpec, DiscriminatorCalibration, NoiseTrace, Unit};

use crate::config::Resolved;
use crate::error::{config, CliError};

/// Trace input shared by `analyze` and `simulate`.
#[derive(Debug, Args)]
pub struct TraceArgs {
    /// CSV with a timestamp column and a value column.
    pub trace: PathBuf,
    #[arg(long, default_value = "time_s")]
    pub time_column: String,
    #[arg(long, default_value = "value")]
    pub value_column: String,
    /// Error-signal slope in V/Hz. When given the trace is read as volts
    /// and converted to cavity length; otherwise it is read as metres.
    #[arg(long, allow_hyphen_values = true)]
    pub slope: Option<f64>,
}

pub struct LengthTrace {
    pub trace: NoiseTrace,
    /// Samples outside the discriminator's linear range, when converted.
    pub out_of_range: Option<usize>,
}

impl TraceArgs {
    pub fn load(&self, r: &Resolved) -> Result<LengthTrace, CliError> {
        let unit = if self.slope.is_some() { Unit::Volt } else { Unit::Meter };
        let columns = ColumnSpec {
            time: self.time_column.clone(),
            value: self.value_column.clone(),
            unit,
        };
        let raw = ingest_trace(&self.trace, &columns)
            .map_err(|e| CliError::Ingest(format!("{}: {e}", self.trace.display())))?;
        let Some(slope) = self.slope else {
            return Ok(LengthTrace {
                trace: raw,
                out_of_range: None,
            });
        };
        let cal = DiscriminatorCalibration::new(slope, r.cavity.length(), r.atom.wavelength())
            .map_err(|e| config("--slope", e))?;
        let conv = error_to_length(&raw, &cal).map_err(|e| CliError::Ingest(e.to_string()))?;
        Ok(LengthTrace {
            trace: conv.trace,
            out_of_range: Some(conv.out_of_range),
        })
    }
}
