use std::f64::consts::PI;

use super::transfer::OpenLoop;
use super::LoopError;
use crate::noise::{estimate_psd, NoiseBudget, NoiseError, NoiseTrace, SpectralDensity, Unit, WelchConfig};

/// Spectral settings for the residual budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOptions {
    pub welch: WelchConfig,
    pub bands: Vec<(f64, f64)>,
    /// Residual magnitude, relative to the input RMS, treated as divergence.
    pub divergence_factor: f64,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self {
            welch: WelchConfig::default(),
            bands: Vec::new(),
            divergence_factor: 1e6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LockSimulation {
    pub residual: NoiseTrace,
    pub psd: SpectralDensity,
    pub budget: NoiseBudget,
}

/// Bilinear biquad for the plant, prewarped at its resonance.
struct Biquad {
    b: [f64; 3],
    a: [f64; 2],
    s1: f64,
    s2: f64,
}

impl Biquad {
    fn plant(ol: &OpenLoop, fs: f64) -> Self {
        let p = &ol.plant;
        let w0 = 2.0 * PI * p.resonance_frequency;
        let k = w0 / (w0 / (2.0 * fs)).tan();
        let damp = w0 * k / p.quality_factor;
        let a0 = k * k + damp + w0 * w0;
        let g = p.dc_gain * w0 * w0 / a0;
        Self {
            b: [g, 2.0 * g, g],
            a: [(2.0 * w0 * w0 - 2.0 * k * k) / a0, (k * k - damp + w0 * w0) / a0],
            s1: 0.0,
            s2: 0.0,
        }
    }

    /// Part of the next output already fixed by past inputs.
    fn peek_state(&self) -> f64 {
        self.s1
    }

    fn step(&mut self, u: f64) -> f64 {
        let y = self.b[0] * u + self.s1;
        self.s1 = self.b[1] * u - self.a[0] * y + self.s2;
        self.s2 = self.b[2] * u - self.a[1] * y;
        y
    }
}

/// Closed-loop residual of injected length noise.
///
/// Each sample the residual length is converted to volts by the
/// discriminator, passed through a bilinear PI controller and the plant
/// (bilinear, prewarped at its resonance), and the plant output is
/// subtracted from the injected noise. Without delay the loop is algebraic
/// and is solved exactly for the current sample; a delay is rounded to
/// whole samples.
pub fn simulate_lock(noise: &NoiseTrace, ol: &OpenLoop, opts: &SimulationOptions) -> Result<LockSimulation, LoopError> {
    if noise.unit() != Unit::Meter {
        return Err(NoiseError::UnitMismatch {
            expected: Unit::Meter,
            found: noise.unit(),
        }
        .into());
    }
    let fs = noise.sample_rate();
    let c = &ol.controller;
    c.validate()?;
    ol.plant.validate()?;
    if ((c.sample_rate - fs) / fs).abs() > 1e-9 {
        return Err(LoopError::SampleRateMismatch {
            controller: c.sample_rate,
            trace: fs,
        });
    }
    if fs < 20.0 * ol.plant.resonance_frequency {
        return Err(LoopError::InvalidParameter {
            name: "sample_rate",
            value: fs,
            reason: "must be at least 20 times the plant resonance frequency",
        });
    }

    let d = ol.discriminator.gain;
    let half_ki_t = c.integral_gain / (2.0 * fs);
    let c0 = c.proportional_gain + half_ki_t;
    let delay = (ol.plant.delay * fs).round() as usize;

    let mut plant = Biquad::plant(ol, fs);
    let b0 = plant.b[0];
    // integrator output carried into the next sample
    let mut carry = 0.0;
    let mut pending = std::collections::VecDeque::from(vec![0.0; delay]);

    let input_rms = (noise.samples().iter().map(|x| x * x).sum::<f64>() / noise.len() as f64).sqrt();
    let limit = opts.divergence_factor * input_rms;
    let unstable = || LoopError::UnstableLoop {
        integral_gain: c.integral_gain,
        proportional_gain: c.proportional_gain,
    };

    let mut residual = Vec::with_capacity(noise.len());
    for &n in noise.samples() {
        let r = if delay == 0 {
            let r = (n - b0 * carry - plant.peek_state()) / (1.0 + b0 * c0 * d);
            let e = d * r;
            let u = c0 * e + carry;
            plant.step(u);
            carry = u - c.proportional_gain * e + half_ki_t * e;
            r
        } else {
            let y = plant.step(pending.pop_front().unwrap_or(0.0));
            let r = n - y;
            let e = d * r;
            let u = c0 * e + carry;
            pending.push_back(u);
            carry = u - c.proportional_gain * e + half_ki_t * e;
            r
        };
        if !r.is_finite() || (limit > 0.0 && r.abs() > limit) {
            return Err(unstable());
        }
        residual.push(r);
    }

    let residual = noise.with_samples(residual);
    let mut welch = opts.welch;
    welch.segment_length = welch.segment_length.min(residual.len());
    let psd = estimate_psd(&residual, &welch)?;
    let hz_per_meter = None;
    let budget = NoiseBudget::from_psd(&psd, &opts.bands, hz_per_meter)?;
    Ok(LockSimulation { residual, psd, budget })
}
