use super::trace::{NoiseTrace, Unit};
use super::{positive, NoiseError};
use crate::units::optical_frequency;

/// Converts PDH error volts to cavity length changes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminatorCalibration {
    /// Error-signal slope at line centre, V/Hz.
    pub slope: f64,
    pub cavity_length: f64,
    pub wavelength: f64,
    /// Half-width of the detuning range over which the error signal is
    /// treated as linear, Hz. `None` disables the range check.
    pub linear_range: Option<f64>,
}

impl DiscriminatorCalibration {
    pub fn new(slope: f64, cavity_length: f64, wavelength: f64) -> Result<Self, NoiseError> {
        if !(slope.is_finite() && slope != 0.0) {
            return Err(NoiseError::InvalidParameter {
                name: "slope",
                value: slope,
                reason: "must be finite and non-zero",
            });
        }
        Ok(Self {
            slope,
            cavity_length: positive("cavity_length", cavity_length)?,
            wavelength: positive("wavelength", wavelength)?,
            linear_range: None,
        })
    }

    pub fn with_linear_range(mut self, half_width_hz: f64) -> Result<Self, NoiseError> {
        self.linear_range = Some(positive("linear_range", half_width_hz)?);
        Ok(self)
    }

    /// Metres of cavity length per volt of error signal, `λL / (c · slope)`.
    pub fn meters_per_volt(&self) -> f64 {
        self.cavity_length / (optical_frequency(self.wavelength) * self.slope)
    }

    /// Optical frequency shift per metre of length change, `ν / L`.
    pub fn hz_per_meter(&self) -> f64 {
        optical_frequency(self.wavelength) / self.cavity_length
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthConversion {
    pub trace: NoiseTrace,
    /// Samples whose implied detuning falls outside the linear range.
    pub out_of_range: usize,
}

/// Volts → Hz → metres, sample by sample.
pub fn error_to_length(
    trace: &NoiseTrace,
    cal: &DiscriminatorCalibration,
) -> Result<LengthConversion, NoiseError> {
    if trace.unit() != Unit::Volt {
        return Err(NoiseError::UnitMismatch {
            expected: Unit::Volt,
            found: trace.unit(),
        });
    }
    let out_of_range = match cal.linear_range {
        Some(w) => trace.samples().iter().filter(|v| (*v / cal.slope).abs() > w).count(),
        None => 0,
    };
    Ok(LengthConversion {
        trace: trace.map_scaled(cal.meters_per_volt(), Unit::Meter),
        out_of_range,
    })
}
