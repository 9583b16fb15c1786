use std::f64::consts::PI;

use num_complex::Complex64;

use super::pdh::{discriminator_slope, PDHConfig};
use super::plant::{plant_response, PlantModel};
use super::{non_negative, positive, LoopError};
use crate::par::{self, Execution};
use crate::units::optical_frequency;

/// Linear frequency response.
pub trait TransferFunction {
    fn response(&self, f: f64) -> Complex64;

    /// Phase in radians, continuous in `f`. Implementors with a known
    /// analytic phase override this; the default is the principal argument.
    fn phase(&self, f: f64) -> f64 {
        self.response(f).arg()
    }
}

/// PI controller running at `sample_rate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerConfig {
    /// 1/s.
    pub integral_gain: f64,
    pub proportional_gain: f64,
    pub sample_rate: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self {
            integral_gain: 1000.0,
            proportional_gain: 0.0,
            sample_rate: 250e3,
        }
    }
}

impl ControllerConfig {
    pub fn integral(integral_gain: f64, sample_rate: f64) -> Result<Self, LoopError> {
        let c = Self {
            integral_gain,
            proportional_gain: 0.0,
            sample_rate,
        };
        c.validate()?;
        Ok(c)
    }

    /// Gains must be non-negative. Both may be zero, which opens the loop.
    pub fn validate(&self) -> Result<(), LoopError> {
        non_negative("integral_gain", self.integral_gain)?;
        non_negative("proportional_gain", self.proportional_gain)?;
        positive("sample_rate", self.sample_rate)?;
        Ok(())
    }

    pub fn is_open(&self) -> bool {
        self.integral_gain == 0.0 && self.proportional_gain == 0.0
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            integral_gain: self.integral_gain * k,
            proportional_gain: self.proportional_gain * k,
            sample_rate: self.sample_rate,
        }
    }
}

impl TransferFunction for ControllerConfig {
    fn response(&self, f: f64) -> Complex64 {
        Complex64::new(self.proportional_gain, -self.integral_gain / (2.0 * PI * f))
    }

    fn phase(&self, f: f64) -> f64 {
        (-self.integral_gain / (2.0 * PI * f)).atan2(self.proportional_gain)
    }
}

impl TransferFunction for PlantModel {
    fn response(&self, f: f64) -> Complex64 {
        plant_response(self, f)
    }

    fn phase(&self, f: f64) -> f64 {
        PlantModel::phase(self, f)
    }
}

/// Length-to-voltage conversion of the error signal, V/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminator {
    pub gain: f64,
}

impl Discriminator {
    pub fn new(gain: f64) -> Result<Self, LoopError> {
        Ok(Self {
            gain: positive("discriminator gain", gain)?,
        })
    }

    /// Gain that makes discriminator × plant equal to one at DC, so the
    /// controller's integral gain is the low-frequency unity-gain angular
    /// frequency of the loop.
    pub fn normalized(plant: &PlantModel) -> Self {
        Self {
            gain: 1.0 / plant.dc_gain,
        }
    }

    /// |PDH slope| (V/Hz) times the optical frequency shift per metre.
    pub fn from_pdh(cfg: &PDHConfig, wavelength: f64) -> Result<Self, LoopError> {
        let slope = discriminator_slope(cfg)?;
        let hz_per_m = optical_frequency(wavelength) / cfg.cavity.length();
        Self::new(slope.abs() * hz_per_m)
    }
}

impl TransferFunction for Discriminator {
    fn response(&self, _f: f64) -> Complex64 {
        Complex64::new(self.gain, 0.0)
    }

    fn phase(&self, _f: f64) -> f64 {
        0.0
    }
}

/// Controller × plant × discriminator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenLoop {
    pub controller: ControllerConfig,
    pub plant: PlantModel,
    pub discriminator: Discriminator,
}

impl OpenLoop {
    pub fn new(controller: ControllerConfig, plant: PlantModel, discriminator: Discriminator) -> Result<Self, LoopError> {
        controller.validate()?;
        plant.validate()?;
        positive("discriminator gain", discriminator.gain)?;
        Ok(Self {
            controller,
            plant,
            discriminator,
        })
    }

    /// Same loop with both controller gains multiplied by `k`.
    pub fn with_gain_scale(&self, k: f64) -> Self {
        Self {
            controller: self.controller.scaled(k),
            ..*self
        }
    }

    /// `1 / (1 + L(f))`.
    pub fn sensitivity(&self, f: f64) -> Complex64 {
        1.0 / (1.0 + self.response(f))
    }
}

impl TransferFunction for OpenLoop {
    fn response(&self, f: f64) -> Complex64 {
        self.controller.response(f) * self.plant.response(f) * self.discriminator.response(f)
    }

    fn phase(&self, f: f64) -> f64 {
        self.controller.phase(f) + self.plant.phase(f) + self.discriminator.phase(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodePoint {
    pub frequency: f64,
    pub magnitude_db: f64,
    /// Continuous phase, degrees.
    pub phase_deg: f64,
}

/// `n` logarithmically spaced frequencies from `f_lo` to `f_hi` inclusive.
pub fn log_frequencies(f_lo: f64, f_hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![f_lo];
    }
    let (a, b) = (f_lo.ln(), f_hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

pub fn bode_sweep<T>(system: &T, freqs: &[f64], exec: Execution) -> Result<Vec<BodePoint>, LoopError>
where
    T: TransferFunction + Sync + ?Sized,
{
    for &f in freqs {
        positive("frequency", f)?;
    }
    if freqs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LoopError::InvalidParameter {
            name: "frequencies",
            value: f64::NAN,
            reason: "must be strictly increasing",
        });
    }
    Ok(par::map_slice(freqs, exec, |&f| BodePoint {
        frequency: f,
        magnitude_db: 20.0 * system.response(f).norm().log10(),
        phase_deg: system.phase(f).to_degrees(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrator() -> ControllerConfig {
        ControllerConfig::integral(100.0, 1e5).unwrap()
    }

    #[test]
    fn integrator_bode() {
        let freqs = log_frequencies(1.0, 1e4, 41);
        let b = bode_sweep(&integrator(), &freqs, Execution::Sequential).unwrap();
        for p in &b {
            assert!((p.phase_deg + 90.0).abs() < 1e-12);
        }
        let per_decade = b[10].magnitude_db - b[0].magnitude_db;
        assert!((per_decade + 20.0).abs() < 1e-9);
    }

    #[test]
    fn composed_phase_runs_from_minus_90_to_minus_270() {
        let plant = PlantModel::default();
        let ol = OpenLoop::new(integrator(), plant, Discriminator::normalized(&plant)).unwrap();
        assert!((ol.phase(0.01).to_degrees() + 90.0).abs() < 0.01);
        assert!((ol.phase(2750.0).to_degrees() + 180.0).abs() < 1e-9);
        assert!((ol.phase(1e7).to_degrees() + 270.0).abs() < 0.01);
        for f in log_frequencies(1.0, 1e6, 200) {
            let d = (ol.phase(f) - ol.response(f).arg()) / (2.0 * PI);
            assert!((d - d.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_modes_agree() {
        let plant = PlantModel::default();
        let ol = OpenLoop::new(integrator(), plant, Discriminator::normalized(&plant)).unwrap();
        let freqs = log_frequencies(1.0, 1e5, 500);
        assert_eq!(
            bode_sweep(&ol, &freqs, Execution::Sequential).unwrap(),
            bode_sweep(&ol, &freqs, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn sweep_validates() {
        assert!(bode_sweep(&integrator(), &[10.0, 5.0], Execution::Sequential).is_err());
        assert!(bode_sweep(&integrator(), &[0.0, 5.0], Execution::Sequential).is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_frequencies(2.0, 2000.0, 4);
        assert!((g[0] - 2.0).abs() < 1e-12 && (g[3] - 2000.0).abs() < 1e-9);
        assert!((g[1] - 20.0).abs() < 1e-10);
    }
}
