use crate::par::{self, Execution};

use super::psd::{estimate_psd_with, SpectralDensity, WelchConfig};
use super::trace::NoiseTrace;
use super::NoiseError;

/// RMS carried by one frequency band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandRms {
    pub f_lo: f64,
    pub f_hi: f64,
    pub rms: f64,
    /// Band variance over the full-grid variance.
    pub fraction: f64,
}

/// Band-limited RMS by trapezoidal integration of `psd` over `[f_lo, f_hi]`.
pub fn band_rms(psd: &SpectralDensity, f_lo: f64, f_hi: f64) -> Result<BandRms, NoiseError> {
    let nyquist = psd.max_frequency();
    let slack = 1e-9 * nyquist;
    if !(f_lo >= 0.0 && f_lo <= f_hi && f_hi <= nyquist + slack) {
        return Err(NoiseError::BandOutOfRange { f_lo, f_hi, nyquist });
    }
    let var = psd.integrate(f_lo, f_hi);
    let total = psd.total_variance();
    let fraction = if total > 0.0 { (var / total).clamp(0.0, 1.0) } else { 0.0 };
    Ok(BandRms {
        f_lo,
        f_hi,
        rms: var.sqrt(),
        fraction,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseBudget {
    pub total_rms: f64,
    pub bands: Vec<BandRms>,
    /// Total RMS mapped to an optical frequency, when a length-to-frequency
    /// factor was supplied.
    pub frequency_rms: Option<f64>,
}

impl NoiseBudget {
    pub fn from_psd(
        psd: &SpectralDensity,
        bands: &[(f64, f64)],
        hz_per_meter: Option<f64>,
    ) -> Result<Self, NoiseError> {
        let total_rms = psd.total_variance().sqrt();
        let bands = bands
            .iter()
            .map(|&(lo, hi)| band_rms(psd, lo, hi))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            total_rms,
            bands,
            frequency_rms: hz_per_meter.map(|k| k.abs() * total_rms),
        })
    }
}

/// Cavity-only density from a combined density and an independently measured
/// laser density, assuming uncorrelated contributions: `max(total − laser, 0)`.
///
/// The laser density is linearly resampled onto the grid of `total`; it must
/// cover that grid to within one of its own bins.
pub fn separate_laser(total: &SpectralDensity, laser: &SpectralDensity) -> Result<SpectralDensity, NoiseError> {
    if total.unit() != laser.unit() {
        return Err(NoiseError::UnitMismatch {
            expected: total.unit(),
            found: laser.unit(),
        });
    }
    let lf = laser.frequencies();
    let step = lf[1] - lf[0];
    let (t_lo, t_hi) = (total.frequencies()[0], total.max_frequency());
    if lf[0] > t_lo + step || laser.max_frequency() < t_hi - step {
        return Err(NoiseError::GridMismatch(format!(
            "laser grid [{}, {}] Hz does not cover [{t_lo}, {t_hi}] Hz",
            lf[0],
            laser.max_frequency()
        )));
    }
    let f_max = laser.max_frequency();
    let density = total
        .frequencies()
        .iter()
        .zip(total.density())
        .map(|(&f, &s)| {
            let l = laser.interpolate(f.clamp(lf[0], f_max));
            (s - l).max(0.0)
        })
        .collect();
    Ok(total.with_density(density))
}

/// Estimates a PSD and budget for each trace. Results keep the input order.
pub fn analyze_batch(
    traces: &[NoiseTrace],
    cfg: &WelchConfig,
    bands: &[(f64, f64)],
    exec: Execution,
) -> Vec<Result<(SpectralDensity, NoiseBudget), NoiseError>> {
    par::map_slice(traces, exec, |trace| {
        // inner estimate runs sequentially; the batch is the parallel axis
        let psd = estimate_psd_with(trace, cfg, Execution::Sequential)?;
        let budget = NoiseBudget::from_psd(&psd, bands, None)?;
        Ok((psd, budget))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::Unit;

    fn ramp() -> SpectralDensity {
        let f: Vec<f64> = (0..=100).map(|i| i as f64 * 10.0).collect();
        let s: Vec<f64> = f.iter().map(|x| 1.0 + x / 1000.0).collect();
        SpectralDensity::new(f, s, 10.0, Unit::Meter).unwrap()
    }

    #[test]
    fn empty_band_is_zero() {
        let b = band_rms(&ramp(), 300.0, 300.0).unwrap();
        assert_eq!(b.rms, 0.0);
        assert_eq!(b.fraction, 0.0);
    }

    #[test]
    fn out_of_range() {
        assert!(band_rms(&ramp(), 10.0, 2000.0).is_err());
        assert!(band_rms(&ramp(), 500.0, 100.0).is_err());
        assert!(band_rms(&ramp(), -1.0, 100.0).is_err());
    }

    #[test]
    fn full_band_fraction_one() {
        let b = band_rms(&ramp(), 0.0, 1000.0).unwrap();
        assert!((b.fraction - 1.0).abs() < 1e-12);
        assert!((b.rms * b.rms - 1500.0).abs() < 1e-9);
    }

    #[test]
    fn laser_zero_is_identity() {
        let t = ramp();
        let l = t.with_density(vec![0.0; t.len()]);
        assert_eq!(separate_laser(&t, &l).unwrap(), t);
    }

    #[test]
    fn laser_resampled_and_clipped() {
        let t = ramp();
        let f: Vec<f64> = (0..=50).map(|i| i as f64 * 20.0).collect();
        let l = SpectralDensity::new(f.clone(), vec![1.5; f.len()], 20.0, Unit::Meter).unwrap();
        let c = separate_laser(&t, &l).unwrap();
        assert_eq!(c.density()[0], 0.0);
        assert!((c.density()[100] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn laser_grid_too_short() {
        let t = ramp();
        let l = SpectralDensity::new(vec![0.0, 100.0, 200.0], vec![1.0; 3], 100.0, Unit::Meter).unwrap();
        assert!(matches!(separate_laser(&t, &l), Err(NoiseError::GridMismatch(_))));
    }

    #[test]
    fn frequency_rms_scales() {
        let b = NoiseBudget::from_psd(&ramp(), &[(0.0, 500.0)], Some(-2.0)).unwrap();
        assert!((b.frequency_rms.unwrap() - 2.0 * b.total_rms).abs() < 1e-12);
    }
}
