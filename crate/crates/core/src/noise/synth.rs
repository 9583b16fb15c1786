use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftPlanner;

use super::model::SpectralModel;
use super::trace::{NoiseTrace, Unit};
use super::{positive, NoiseError};

/// Gaussian trace whose expected one-sided PSD is `model`.
///
/// Each positive-frequency bin receives a complex normal coefficient with
/// variance `S(f_k) · fs · N / 2`; the DC and Nyquist bins are left empty,
/// and the trace is the real inverse transform. The same seed gives the
/// same trace.
pub fn synthesize(
    model: &SpectralModel,
    sample_rate: f64,
    duration: f64,
    seed: u64,
    unit: Unit,
) -> Result<NoiseTrace, NoiseError> {
    positive("sample_rate", sample_rate)?;
    positive("duration", duration)?;
    let nyquist = sample_rate / 2.0;
    if model.max_frequency() > nyquist {
        return Err(NoiseError::NyquistViolation {
            f_max: model.max_frequency(),
            nyquist,
        });
    }
    if !model.is_nonnegative() {
        return Err(NoiseError::InvalidParameter {
            name: "model",
            value: -1.0,
            reason: "spectral model must be non-negative",
        });
    }
    let n = (duration * sample_rate).round() as usize;
    if n < 2 {
        return Err(NoiseError::Empty);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
    let df = sample_rate / n as f64;
    // bins strictly between DC and Nyquist
    let last = (n - 1) / 2;
    let norm = sample_rate * n as f64 / 4.0;
    for k in 1..=last {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        let sigma = (model.density(k as f64 * df) * norm).sqrt();
        let c = Complex64::new(sigma * re, sigma * im);
        spectrum[k] = c;
        spectrum[n - k] = c.conj();
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut spectrum);
    let samples = spectrum.iter().map(|c| c.re / n as f64).collect();
    NoiseTrace::new(sample_rate, samples, unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let m = SpectralModel::flat(10.0, 400.0, 1e-3);
        let a = synthesize(&m, 1e3, 2.0, 7, Unit::Meter).unwrap();
        let b = synthesize(&m, 1e3, 2.0, 7, Unit::Meter).unwrap();
        let c = synthesize(&m, 1e3, 2.0, 8, Unit::Meter).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn zero_model_zero_trace() {
        let tr = synthesize(&SpectralModel::flat(1.0, 10.0, 0.0), 100.0, 1.0, 1, Unit::Meter).unwrap();
        assert!(tr.samples().iter().all(|x| *x == 0.0));
    }

    #[test]
    fn nyquist_enforced() {
        let m = SpectralModel::flat(10.0, 600.0, 1.0);
        assert!(matches!(
            synthesize(&m, 1e3, 1.0, 0, Unit::Meter),
            Err(NoiseError::NyquistViolation { .. })
        ));
    }

    #[test]
    fn flat_model_variance() {
        let fs = 2000.0;
        let s0 = 1e-4;
        let m = SpectralModel::flat(0.0, fs / 2.0, s0);
        let mean_var: f64 = (0..20)
            .map(|seed| synthesize(&m, fs, 4.0, seed, Unit::Meter).unwrap().variance())
            .sum::<f64>()
            / 20.0;
        let expected = s0 * fs / 2.0;
        assert!(((mean_var - expected) / expected).abs() < 0.05, "{mean_var} vs {expected}");
    }

    #[test]
    fn odd_length() {
        let m = SpectralModel::flat(1.0, 50.0, 1.0);
        let tr = synthesize(&m, 101.0, 1.0, 3, Unit::Meter).unwrap();
        assert_eq!(tr.len(), 101);
        assert!(tr.mean().abs() < 1e-12);
    }
}
