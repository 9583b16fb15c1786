use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::trace::{NoiseTrace, Unit};
use super::NoiseError;
use crate::par::{self, Execution};

/// Segment taper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    Rectangular,
    /// Periodic raised cosine.
    Hann,
    /// Flat top with raised-cosine edges; `alpha` is the tapered fraction.
    Tukey(f64),
}

impl Window {
    pub fn coefficients(&self, n: usize) -> Vec<f64> {
        let nf = n as f64;
        match *self {
            Window::Rectangular => vec![1.0; n],
            Window::Hann => (0..n).map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / nf).cos()).collect(),
            Window::Tukey(alpha) => {
                let alpha = alpha.clamp(0.0, 1.0);
                let edge = alpha * nf / 2.0;
                (0..n)
                    .map(|i| {
                        let x = i as f64;
                        if edge == 0.0 {
                            1.0
                        } else if x < edge {
                            0.5 - 0.5 * (PI * x / edge).cos()
                        } else if x > nf - edge {
                            0.5 - 0.5 * (PI * (nf - x) / edge).cos()
                        } else {
                            1.0
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Averaged modified periodogram settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchConfig {
    pub segment_length: usize,
    /// Fractional overlap of consecutive segments, in `[0, 1)`.
    pub overlap: f64,
    pub window: Window,
}

impl Default for WelchConfig {
    fn default() -> Self {
        Self {
            segment_length: 4096,
            overlap: 0.5,
            window: Window::Hann,
        }
    }
}

impl WelchConfig {
    pub fn with_segment_length(segment_length: usize) -> Self {
        Self {
            segment_length,
            ..Self::default()
        }
    }

    fn hop(&self) -> usize {
        ((self.segment_length as f64 * (1.0 - self.overlap)).round() as usize).max(1)
    }
}

/// One-sided power spectral density.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    frequencies: Vec<f64>,
    density: Vec<f64>,
    resolution_bandwidth: f64,
    /// Unit of the underlying signal; density is in unit²/Hz.
    unit: Unit,
}

impl SpectralDensity {
    pub fn new(
        frequencies: Vec<f64>,
        density: Vec<f64>,
        resolution_bandwidth: f64,
        unit: Unit,
    ) -> Result<Self, NoiseError> {
        if frequencies.len() != density.len() || frequencies.len() < 2 {
            return Err(NoiseError::GridMismatch(format!(
                "{} frequencies for {} density values",
                frequencies.len(),
                density.len()
            )));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if frequencies.windows(2).any(|w| !(w[1] > w[0])) || frequencies[0] < 0.0 {
            return Err(NoiseError::GridMismatch("frequencies must be non-negative and increasing".into()));
        }
        if let Some(&bad) = density.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return Err(NoiseError::InvalidParameter {
                name: "density",
                value: bad,
                reason: "must be finite and non-negative",
            });
        }
        Ok(Self {
            frequencies,
            density,
            resolution_bandwidth,
            unit,
        })
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn resolution_bandwidth(&self) -> f64 {
        self.resolution_bandwidth
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn max_frequency(&self) -> f64 {
        *self.frequencies.last().expect("non-empty grid")
    }

    /// Trapezoidal integral of the piecewise-linear density over `[f_lo, f_hi]`.
    ///
    /// Bins straddling the band edges are split at the interpolated value.
    pub fn integrate(&self, f_lo: f64, f_hi: f64) -> f64 {
        let f = &self.frequencies;
        let s = &self.density;
        let mut acc = 0.0;
        for i in 0..f.len() - 1 {
            let (a, b) = (f[i], f[i + 1]);
            let lo = a.max(f_lo);
            let hi = b.min(f_hi);
            if hi <= lo {
                continue;
            }
            let at = |x: f64| {
                if x == a {
                    s[i]
                } else if x == b {
                    s[i + 1]
                } else {
                    s[i] + (s[i + 1] - s[i]) * (x - a) / (b - a)
                }
            };
            acc += 0.5 * (at(lo) + at(hi)) * (hi - lo);
        }
        acc
    }

    /// Integral over the whole grid.
    pub fn total_variance(&self) -> f64 {
        self.integrate(self.frequencies[0], self.max_frequency())
    }

    /// Density linearly interpolated at `freq`, zero outside the grid.
    pub fn interpolate(&self, freq: f64) -> f64 {
        let f = &self.frequencies;
        if freq < f[0] || freq > self.max_frequency() {
            return 0.0;
        }
        let i = f.partition_point(|&x| x <= freq).saturating_sub(1).min(f.len() - 2);
        let t = (freq - f[i]) / (f[i + 1] - f[i]);
        self.density[i] + (self.density[i + 1] - self.density[i]) * t
    }

    pub(crate) fn with_density(&self, density: Vec<f64>) -> Self {
        Self {
            frequencies: self.frequencies.clone(),
            density,
            resolution_bandwidth: self.resolution_bandwidth,
            unit: self.unit,
        }
    }

    /// `freq_hz,density_unit2_per_hz` with one header line.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), NoiseError> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["freq_hz", "density_unit2_per_hz"])?;
        for (f, s) in self.frequencies.iter().zip(&self.density) {
            w.write_record([format!("{f:e}"), format!("{s:e}")])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn estimate_psd(trace: &NoiseTrace, cfg: &WelchConfig) -> Result<SpectralDensity, NoiseError> {
    estimate_psd_with(trace, cfg, Execution::default())
}

/// Averaged modified periodogram.
///
/// The trace mean is removed once; segments are windowed, transformed and
/// their squared magnitudes averaged. Each bin is scaled by
/// `2 / (fs Σw²)`, so the trapezoidal integral of the result equals the
/// window-weighted mean square of the signal.
pub fn estimate_psd_with(
    trace: &NoiseTrace,
    cfg: &WelchConfig,
    exec: Execution,
) -> Result<SpectralDensity, NoiseError> {
    let n = cfg.segment_length;
    if n < 2 {
        return Err(NoiseError::InvalidParameter {
            name: "segment_length",
            value: n as f64,
            reason: "must be at least 2",
        });
    }
    if !(0.0..1.0).contains(&cfg.overlap) {
        return Err(NoiseError::InvalidParameter {
            name: "overlap",
            value: cfg.overlap,
            reason: "must lie in [0, 1)",
        });
    }
    if n > trace.len() {
        return Err(NoiseError::SegmentTooLong {
            segment: n,
            len: trace.len(),
        });
    }

    let mean = trace.mean();
    let x: Vec<f64> = trace.samples().iter().map(|v| v - mean).collect();
    let window = cfg.window.coefficients(n);
    let window_power: f64 = window.iter().map(|w| w * w).sum();
    let hop = cfg.hop();
    let segments = (x.len() - n) / hop + 1;
    let bins = n / 2 + 1;

    let fft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_forward(n);
    let periodograms = par::map_range(segments, exec, |k| {
        let start = k * hop;
        let mut buf: Vec<Complex64> = x[start..start + n]
            .iter()
            .zip(&window)
            .map(|(v, w)| Complex64::new(v * w, 0.0))
            .collect();
        fft.process(&mut buf);
        buf[..bins].iter().map(|c| c.norm_sqr()).collect::<Vec<f64>>()
    });

    let mut acc = vec![0.0; bins];
    for p in &periodograms {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
    }
    let fs = trace.sample_rate();
    let scale = 2.0 / (fs * window_power * segments as f64);
    let density = acc.into_iter().map(|a| a * scale).collect();
    let df = fs / n as f64;
    let frequencies = (0..bins).map(|k| k as f64 * df).collect();
    SpectralDensity::new(frequencies, density, df, trace.unit())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine(n: usize, fs: f64, f0: f64, a: f64) -> NoiseTrace {
        let s = (0..n).map(|i| a * (2.0 * PI * f0 * i as f64 / fs).sin()).collect();
        NoiseTrace::new(fs, s, Unit::Meter).unwrap()
    }

    #[test]
    fn on_bin_sine_power() {
        let fs = 1024.0;
        let cfg = WelchConfig::with_segment_length(256);
        // bin spacing 4 Hz; 100 Hz is bin 25
        let tr = sine(8192, fs, 100.0, 0.7);
        let psd = estimate_psd(&tr, &cfg).unwrap();
        let p = psd.total_variance();
        assert!(((p - 0.245) / 0.245).abs() < 0.01, "{p}");
        let peak = psd.density().iter().cloned().fold(0.0, f64::max);
        assert_eq!(psd.interpolate(100.0), peak);
    }

    #[test]
    fn rectangular_single_segment_is_exact_parseval() {
        let s: Vec<f64> = (0..512).map(|i| ((i * 7919) % 127) as f64 / 127.0 - 0.5).collect();
        let tr = NoiseTrace::new(100.0, s, Unit::Volt).unwrap();
        let cfg = WelchConfig {
            segment_length: 512,
            overlap: 0.0,
            window: Window::Rectangular,
        };
        let psd = estimate_psd(&tr, &cfg).unwrap();
        let rel = (psd.total_variance() - tr.variance()).abs() / tr.variance();
        assert!(rel < 1e-12, "{rel}");
    }

    #[test]
    fn segment_too_long() {
        let tr = sine(100, 10.0, 1.0, 1.0);
        assert!(matches!(
            estimate_psd(&tr, &WelchConfig::with_segment_length(101)),
            Err(NoiseError::SegmentTooLong { .. })
        ));
        let bad = WelchConfig {
            overlap: 1.0,
            ..WelchConfig::with_segment_length(10)
        };
        assert!(estimate_psd(&tr, &bad).is_err());
    }

    #[test]
    fn sequential_and_parallel_identical() {
        let tr = sine(50_000, 1e4, 123.4, 1.0);
        let cfg = WelchConfig::with_segment_length(1024);
        let a = estimate_psd_with(&tr, &cfg, Execution::Sequential).unwrap();
        let b = estimate_psd_with(&tr, &cfg, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn band_integration_splits_bins() {
        let psd = SpectralDensity::new(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 2.0], 1.0, Unit::Meter).unwrap();
        assert_eq!(psd.integrate(0.0, 2.0), 3.0);
        assert_eq!(psd.integrate(0.5, 1.5), 0.75 + 1.0);
        assert_eq!(psd.integrate(1.0, 1.0), 0.0);
        assert_eq!(psd.interpolate(0.25), 0.5);
    }

    #[test]
    fn windows() {
        let h = Window::Hann.coefficients(4);
        assert_eq!(h[0], 0.0);
        assert!((h[2] - 1.0).abs() < 1e-15);
        let t = Window::Tukey(0.0).coefficients(8);
        assert!(t.iter().all(|w| *w == 1.0));
        let t = Window::Tukey(1.0).coefficients(64);
        let hann = Window::Hann.coefficients(64);
        for (a, b) in t.iter().zip(&hann) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_invalid_grids() {
        assert!(SpectralDensity::new(vec![0.0, 1.0], vec![1.0], 1.0, Unit::Meter).is_err());
        assert!(SpectralDensity::new(vec![1.0, 0.5], vec![1.0, 1.0], 1.0, Unit::Meter).is_err());
        assert!(SpectralDensity::new(vec![0.0, 1.0], vec![1.0, -1.0], 1.0, Unit::Meter).is_err());
    }
}
