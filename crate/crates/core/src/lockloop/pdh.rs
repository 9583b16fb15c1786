use std::f64::consts::PI;

use num_complex::Complex64;

use super::{positive, LoopError};
use crate::optics::CavityGeometry;
use crate::solve::brent;

/// Phase-modulated probe reflected off the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PDHConfig {
    /// Ω in Hz.
    pub modulation_frequency: f64,
    /// β in radians.
    pub modulation_depth: f64,
    pub cavity: CavityGeometry,
    /// Volts per unit of the normalised demodulated signal.
    pub error_scale: f64,
}

impl Default for PDHConfig {
    fn default() -> Self {
        Self {
            modulation_frequency: 100e6,
            modulation_depth: 1.08,
            cavity: CavityGeometry::near_concentric(5.5e-3, 0.995, 7.8e-6).expect("valid default cavity"),
            error_scale: 1.0,
        }
    }
}

impl PDHConfig {
    pub fn new(modulation_frequency: f64, modulation_depth: f64, cavity: CavityGeometry) -> Result<Self, LoopError> {
        let cfg = Self {
            modulation_frequency,
            modulation_depth,
            cavity,
            error_scale: 1.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), LoopError> {
        if !(self.modulation_frequency.is_finite() && self.modulation_frequency != 0.0) {
            return Err(LoopError::InvalidParameter {
                name: "modulation_frequency",
                value: self.modulation_frequency,
                reason: "must be finite and non-zero",
            });
        }
        if !(self.modulation_depth > 0.0 && self.modulation_depth <= 1.5) {
            return Err(LoopError::InvalidParameter {
                name: "modulation_depth",
                value: self.modulation_depth,
                reason: "must lie in (0, 1.5]",
            });
        }
        positive("error_scale", self.error_scale)?;
        Ok(())
    }

    fn full_linewidth(&self) -> f64 {
        self.cavity.spectral_profile().full_linewidth
    }
}

fn round_trip_phasor(detuning: f64, cavity: &CavityGeometry) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * detuning / cavity.free_spectral_range())
}

/// Reflected field amplitude relative to the incident field.
///
/// `F(δ) = (−r₁ + r₂(r₁² + t₁²)e^{iφ}) / (1 − r₁r₂e^{iφ})` with `φ = 2πδ/FSR`.
pub fn cavity_reflection(detuning: f64, cavity: &CavityGeometry) -> Complex64 {
    let r1 = cavity.mirror_1().amplitude_reflectivity();
    let t1 = cavity.mirror_1().amplitude_transmission();
    let r2 = cavity.mirror_2().amplitude_reflectivity();
    let e = round_trip_phasor(detuning, cavity);
    (-r1 + r2 * (r1 * r1 + t1 * t1) * e) / (1.0 - r1 * r2 * e)
}

/// Transmitted field amplitude relative to the incident field.
pub fn cavity_transmission(detuning: f64, cavity: &CavityGeometry) -> Complex64 {
    let r1 = cavity.mirror_1().amplitude_reflectivity();
    let r2 = cavity.mirror_2().amplitude_reflectivity();
    let t1 = cavity.mirror_1().amplitude_transmission();
    let t2 = cavity.mirror_2().amplitude_transmission();
    let half = Complex64::from_polar(1.0, PI * detuning / cavity.free_spectral_range());
    t1 * t2 * half / (1.0 - r1 * r2 * half * half)
}

/// Demodulated error signal in the first-order sideband approximation.
pub fn pdh_error(detuning: f64, cfg: &PDHConfig) -> f64 {
    let beta = cfg.modulation_depth;
    let omega = cfg.modulation_frequency;
    let c = &cfg.cavity;
    let f0 = cavity_reflection(detuning, c);
    let fp = cavity_reflection(detuning + omega, c);
    let fm = cavity_reflection(detuning - omega, c);
    let beat = f0 * fp.conj() - f0.conj() * fm;
    cfg.error_scale * 2.0 * libm::j0(beta) * libm::j1(beta) * beat.im
}

fn check_resolved(cfg: &PDHConfig) -> Result<f64, LoopError> {
    cfg.validate()?;
    let lw = cfg.full_linewidth();
    if lw >= cfg.modulation_frequency.abs() {
        return Err(LoopError::DegenerateSlope {
            linewidth: lw,
            modulation: cfg.modulation_frequency,
        });
    }
    Ok(lw)
}

/// Slope of [`pdh_error`] at line centre, V/Hz, by central difference with a
/// step of 10⁻⁴ full linewidths.
pub fn discriminator_slope(cfg: &PDHConfig) -> Result<f64, LoopError> {
    let lw = check_resolved(cfg)?;
    Ok(slope_at_zero(cfg, lw))
}

fn slope_at_zero(cfg: &PDHConfig, lw: f64) -> f64 {
    let h = 1e-4 * lw;
    (pdh_error(h, cfg) - pdh_error(-h, cfg)) / (2.0 * h)
}

/// Line-centre slope and the detuning ranges over which the error signal
/// can be used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminatorProfile {
    pub slope: f64,
    /// Half-width over which `ε` stays within 10% of `slope · δ`.
    pub linear_half_width: f64,
    /// Detuning of the first extremum; `ε` is one-to-one inside `±` this.
    pub injective_half_width: f64,
    pub full_linewidth: f64,
}

pub fn discriminator_profile(cfg: &PDHConfig) -> Result<DiscriminatorProfile, LoopError> {
    const NONLINEARITY: f64 = 0.1;
    let lw = check_resolved(cfg)?;
    let slope = slope_at_zero(cfg, lw);
    let step = lw / 200.0;
    let limit = cfg.modulation_frequency.abs() / 2.0;

    let deviation = |d: f64| (pdh_error(d, cfg) - slope * d).abs() / (slope * d).abs() - NONLINEARITY;
    let mut prev = step;
    let mut linear = limit;
    let mut d = step;
    while d < limit {
        if deviation(d) >= 0.0 {
            linear = brent(deviation, prev, d, 1e-10, 0.0)?;
            break;
        }
        prev = d;
        d += step;
    }

    let h = 1e-4 * lw;
    let derivative = |d: f64| (pdh_error(d + h, cfg) - pdh_error(d - h, cfg)) * slope.signum();
    let mut prev = step;
    let mut injective = limit;
    let mut d = step;
    while d < limit {
        if derivative(d) <= 0.0 {
            injective = brent(derivative, prev, d, 1e-10, 0.0)?;
            break;
        }
        prev = d;
        d += step;
    }

    Ok(DiscriminatorProfile {
        slope,
        linear_half_width: linear,
        injective_half_width: injective,
        full_linewidth: lw,
    })
}
