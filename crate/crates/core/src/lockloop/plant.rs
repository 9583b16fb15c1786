use std::f64::consts::PI;

use num_complex::Complex64;

use super::{non_negative, positive, LoopError};

/// Second-order resonant response of the cavity length to actuator voltage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantModel {
    /// m/V below resonance.
    pub dc_gain: f64,
    pub resonance_frequency: f64,
    pub quality_factor: f64,
    /// Pure transport delay, s.
    pub delay: f64,
}

impl Default for PlantModel {
    fn default() -> Self {
        Self {
            dc_gain: 15e-6 / 100.0,
            resonance_frequency: 2750.0,
            quality_factor: 10.0,
            delay: 0.0,
        }
    }
}

impl PlantModel {
    pub fn new(dc_gain: f64, resonance_frequency: f64, quality_factor: f64, delay: f64) -> Result<Self, LoopError> {
        let p = Self {
            dc_gain,
            resonance_frequency,
            quality_factor,
            delay,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), LoopError> {
        positive("dc_gain", self.dc_gain)?;
        positive("resonance_frequency", self.resonance_frequency)?;
        positive("quality_factor", self.quality_factor)?;
        if self.quality_factor <= 0.5 {
            return Err(LoopError::InvalidParameter {
                name: "quality_factor",
                value: self.quality_factor,
                reason: "must exceed 0.5 (underdamped)",
            });
        }
        non_negative("delay", self.delay)?;
        Ok(())
    }

    /// Continuous phase in radians: the resonant part runs from 0 to −π,
    /// the delay adds −2πfτ.
    pub fn phase(&self, f: f64) -> f64 {
        let x = f / self.resonance_frequency;
        -(x / self.quality_factor).atan2(1.0 - x * x) - 2.0 * PI * f * self.delay
    }
}

/// `H(f) = dc / (1 − (f/f₀)² + i f/(f₀Q)) · exp(−i2πfτ)`.
pub fn plant_response(plant: &PlantModel, f: f64) -> Complex64 {
    let x = f / plant.resonance_frequency;
    let den = Complex64::new(1.0 - x * x, x / plant.quality_factor);
    plant.dc_gain / den * Complex64::from_polar(1.0, -2.0 * PI * f * plant.delay)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_frequency_flat() {
        let p = PlantModel::default();
        let h = plant_response(&p, 1.0);
        assert!((h.norm() / p.dc_gain - 1.0).abs() < 1e-6);
        assert!(h.arg().abs() < 1e-3);
    }

    #[test]
    fn at_resonance() {
        let p = PlantModel::default();
        let h = plant_response(&p, p.resonance_frequency);
        assert!((h.norm() - p.quality_factor * p.dc_gain).abs() < 1e-12 * p.dc_gain);
        assert!((h.arg().to_degrees() + 90.0).abs() < 1e-9);
        assert!((p.phase(p.resonance_frequency).to_degrees() + 90.0).abs() < 1e-9);
    }

    #[test]
    fn peak_near_resonance() {
        let p = PlantModel::default();
        let peak = (1..10_000)
            .map(|i| i as f64)
            .max_by(|a, b| plant_response(&p, *a).norm().total_cmp(&plant_response(&p, *b).norm()))
            .unwrap();
        // the magnitude peak sits at f₀·√(1 − 1/2Q²)
        assert!((peak - 2750.0).abs() < 15.0, "{peak}");
    }

    #[test]
    fn phase_matches_arg_with_delay() {
        let p = PlantModel {
            delay: 1e-5,
            ..PlantModel::default()
        };
        for f in [10.0, 500.0, 2000.0] {
            let h = plant_response(&p, f);
            assert!((h.arg() - p.phase(f)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_overdamped() {
        assert!(PlantModel::new(1.0, 100.0, 0.4, 0.0).is_err());
        assert!(PlantModel::new(1.0, 100.0, 2.0, -1.0).is_err());
    }
}
