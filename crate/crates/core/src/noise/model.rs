use std::f64::consts::PI;

use crate::units::ANGSTROM;

/// One additive piece of a spectral model. Densities are one-sided, unit²/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Component {
    /// Constant density on `[f_lo, f_hi)`.
    Flat { f_lo: f64, f_hi: f64, level: f64 },
    /// `level · (f_lo / f)^exponent` on `[f_lo, f_hi)`.
    PowerLaw {
        f_lo: f64,
        f_hi: f64,
        level: f64,
        exponent: f64,
    },
    /// Gaussian line carrying `variance` (truncated to `f ≥ 0`).
    Gaussian { center: f64, width: f64, variance: f64 },
}

impl Component {
    pub fn density(&self, f: f64) -> f64 {
        match *self {
            Component::Flat { f_lo, f_hi, level } => {
                if f >= f_lo && f < f_hi {
                    level
                } else {
                    0.0
                }
            }
            Component::PowerLaw {
                f_lo,
                f_hi,
                level,
                exponent,
            } => {
                if f >= f_lo && f < f_hi {
                    level * (f_lo / f).powf(exponent)
                } else {
                    0.0
                }
            }
            Component::Gaussian {
                center,
                width,
                variance,
            } => {
                if f < 0.0 {
                    return 0.0;
                }
                let z = (f - center) / width;
                variance * (-0.5 * z * z).exp() / (width * (2.0 * PI).sqrt())
            }
        }
    }

    /// Exact integral of the density over `[a, b]`.
    pub fn band_variance(&self, a: f64, b: f64) -> f64 {
        match *self {
            Component::Flat { f_lo, f_hi, level } => {
                let (lo, hi) = (a.max(f_lo), b.min(f_hi));
                if hi > lo {
                    level * (hi - lo)
                } else {
                    0.0
                }
            }
            Component::PowerLaw {
                f_lo,
                f_hi,
                level,
                exponent,
            } => {
                let (lo, hi) = (a.max(f_lo), b.min(f_hi));
                if hi <= lo {
                    return 0.0;
                }
                if (exponent - 1.0).abs() < 1e-12 {
                    level * f_lo * (hi / lo).ln()
                } else {
                    let p = 1.0 - exponent;
                    level * f_lo.powf(exponent) * (hi.powf(p) - lo.powf(p)) / p
                }
            }
            Component::Gaussian {
                center,
                width,
                variance,
            } => {
                let (lo, hi) = (a.max(0.0), b);
                if hi <= lo {
                    return 0.0;
                }
                let cdf = |x: f64| 0.5 * (1.0 + libm::erf((x - center) / (width * 2f64.sqrt())));
                variance * (cdf(hi) - cdf(lo))
            }
        }
    }

    /// Frequency above which the density is negligible (zero for the
    /// band-limited pieces, eight widths past the centre for a line).
    pub fn max_frequency(&self) -> f64 {
        match *self {
            Component::Flat { f_hi, .. } | Component::PowerLaw { f_hi, .. } => f_hi,
            Component::Gaussian { center, width, .. } => center + 8.0 * width,
        }
    }

    fn scaled(&self, k: f64) -> Self {
        match *self {
            Component::Flat { f_lo, f_hi, level } => Component::Flat {
                f_lo,
                f_hi,
                level: level * k,
            },
            Component::PowerLaw {
                f_lo,
                f_hi,
                level,
                exponent,
            } => Component::PowerLaw {
                f_lo,
                f_hi,
                level: level * k,
                exponent,
            },
            Component::Gaussian {
                center,
                width,
                variance,
            } => Component::Gaussian {
                center,
                width,
                variance: variance * k,
            },
        }
    }
}

/// Piecewise spectral density built from additive components.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectralModel {
    pub components: Vec<Component>,
}

impl SpectralModel {
    pub fn new(components: Vec<Component>) -> Self {
        Self { components }
    }

    pub fn flat(f_lo: f64, f_hi: f64, level: f64) -> Self {
        Self::new(vec![Component::Flat { f_lo, f_hi, level }])
    }

    pub fn density(&self, f: f64) -> f64 {
        self.components.iter().map(|c| c.density(f)).sum()
    }

    pub fn band_variance(&self, a: f64, b: f64) -> f64 {
        self.components.iter().map(|c| c.band_variance(a, b)).sum()
    }

    pub fn variance(&self) -> f64 {
        self.band_variance(0.0, f64::INFINITY)
    }

    pub fn max_frequency(&self) -> f64 {
        self.components.iter().map(|c| c.max_frequency()).fold(0.0, f64::max)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.components.iter().all(|c| match *c {
            Component::Flat { level, .. } | Component::PowerLaw { level, .. } => level >= 0.0,
            Component::Gaussian { variance, width, .. } => variance >= 0.0 && width > 0.0,
        })
    }

    /// Every component multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.components.iter().map(|c| c.scaled(k)).collect())
    }

    /// Sum of two models.
    pub fn plus(&self, other: &SpectralModel) -> Self {
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        Self::new(components)
    }
}

/// Synthetic stand-in for a measured cavity length noise spectrum.
///
/// Four pieces, each carrying a fixed share of the total variance:
/// a `1/f` rise from `low_start` up to the plateau, a flat plateau across
/// `plateau`, a narrow Gaussian resonance line and a `1/f²` roll-off
/// starting above the resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceSpectrum {
    pub total_rms: f64,
    pub low_start: f64,
    pub plateau: (f64, f64),
    pub resonance_center: f64,
    pub resonance_width: f64,
    pub rolloff: (f64, f64),
    pub low_fraction: f64,
    pub plateau_fraction: f64,
    pub resonance_fraction: f64,
    pub rolloff_fraction: f64,
}

impl Default for ReferenceSpectrum {
    fn default() -> Self {
        Self {
            total_rms: 0.36 * ANGSTROM,
            low_start: 2.0,
            plateau: (200.0, 2500.0),
            resonance_center: 2750.0,
            resonance_width: 40.0,
            rolloff: (3000.0, 20_000.0),
            low_fraction: 0.08,
            plateau_fraction: 0.88,
            resonance_fraction: 0.01,
            rolloff_fraction: 0.03,
        }
    }
}

impl ReferenceSpectrum {
    pub fn model(&self) -> SpectralModel {
        let var = self.total_rms * self.total_rms;
        let (p_lo, p_hi) = self.plateau;
        let (r_lo, r_hi) = self.rolloff;
        let low_level = self.low_fraction * var / (p_lo * (p_lo / self.low_start).ln());
        let rolloff_level = self.rolloff_fraction * var / (r_lo * (1.0 - r_lo / r_hi));
        SpectralModel::new(vec![
            Component::PowerLaw {
                f_lo: self.low_start,
                f_hi: p_lo,
                // level at f_lo such that S(p_lo) continues as low_level
                level: low_level * p_lo / self.low_start,
                exponent: 1.0,
            },
            Component::Flat {
                f_lo: p_lo,
                f_hi: p_hi,
                level: self.plateau_fraction * var / (p_hi - p_lo),
            },
            Component::Gaussian {
                center: self.resonance_center,
                width: self.resonance_width,
                variance: self.resonance_fraction * var,
            },
            Component::PowerLaw {
                f_lo: r_lo,
                f_hi: r_hi,
                level: rolloff_level,
                exponent: 2.0,
            },
        ])
    }

    /// Band that contains the resonance line and nothing else.
    pub fn resonance_band(&self) -> (f64, f64) {
        (
            self.resonance_center - 5.0 * self.resonance_width,
            self.resonance_center + 5.0 * self.resonance_width,
        )
    }
}
