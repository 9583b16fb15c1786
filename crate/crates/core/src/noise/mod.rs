//! Error-signal traces, spectral densities and noise budgets.
//!
//! Spectral densities are one-sided and use the convention that their
//! trapezoidal integral over `[0, f_nyquist]` equals the mean-square of
//! the (mean-removed) signal, which makes band variances additive and
//! the full-band integral a direct Parseval check.

mod budget;
mod calibration;
mod model;
mod psd;
mod synth;
mod trace;

use thiserror::Error;

pub use budget::{analyze_batch, band_rms, separate_laser, BandRms, NoiseBudget};
pub use calibration::{error_to_length, DiscriminatorCalibration, LengthConversion};
pub use model::{Component, SpectralModel, ReferenceSpectrum};
pub use psd::{estimate_psd, estimate_psd_with, SpectralDensity, WelchConfig, Window};
pub use synth::synthesize;
pub use trace::{ingest_trace, read_trace, write_trace, ColumnSpec, NoiseTrace, Unit};

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("{name} = {value} is invalid: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("trace is empty or has fewer than two samples")]
    Empty,
    #[error("non-uniform sampling at row {row}: interval deviates {deviation:.3}% from nominal")]
    NonUniformSampling { row: usize, deviation: f64 },
    #[error("expected a trace in {expected}, found {found}")]
    UnitMismatch { expected: Unit, found: Unit },
    #[error("segment length {segment} exceeds trace length {len}")]
    SegmentTooLong { segment: usize, len: usize },
    #[error("band [{f_lo}, {f_hi}] Hz outside [0, {nyquist}] Hz or reversed")]
    BandOutOfRange { f_lo: f64, f_hi: f64, nyquist: f64 },
    #[error("model extends to {f_max} Hz, beyond the Nyquist frequency {nyquist} Hz")]
    NyquistViolation { f_max: f64, nyquist: f64 },
    #[error("spectral grids do not overlap: {0}")]
    GridMismatch(String),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, NoiseError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(NoiseError::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}
