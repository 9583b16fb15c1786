use std::f64::consts::PI;

use super::cavity::CavityGeometry;
use super::{positive, OpticsError};
use crate::solve::brent;
use crate::units::SPEED_OF_LIGHT;

/// Fundamental Gaussian mode of a symmetric two-mirror cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGeometry {
    pub rayleigh_range: f64,
    /// 1/e² intensity radius at the cavity centre.
    pub waist: f64,
    pub waist_at_mirror: f64,
    pub stability_product: f64,
    pub stable: bool,
}

impl CavityGeometry {
    /// Waist and Rayleigh range of the TEM₀₀ mode.
    ///
    /// `z_R² = L(2R − L)/4`, `w₀ = √(λ z_R / π)`.
    pub fn mode_geometry(&self, wavelength: f64) -> Result<ModeGeometry, OpticsError> {
        positive("wavelength", wavelength)?;
        let r = self.symmetric_radius()?;
        let l = self.length();
        let d = self.critical_distance();
        if d <= 0.0 {
            return Err(OpticsError::Unstable { critical_distance: d });
        }
        let rayleigh_range = (l * d).sqrt() / 2.0;
        let waist = (wavelength * rayleigh_range / PI).sqrt();
        let ratio = l / (2.0 * rayleigh_range);
        Ok(ModeGeometry {
            rayleigh_range,
            waist,
            waist_at_mirror: waist * (1.0 + ratio * ratio).sqrt(),
            stability_product: (1.0 - l / r).powi(2),
            stable: true,
        })
    }

    pub(crate) fn symmetric_radius(&self) -> Result<f64, OpticsError> {
        if !self.is_symmetric() {
            return Err(OpticsError::Asymmetric {
                r1: self.mirror_1().radius_of_curvature(),
                r2: self.mirror_2().radius_of_curvature(),
            });
        }
        Ok(self.mirror_1().radius_of_curvature())
    }
}

/// `1 − |g|` for a symmetric cavity, computed without cancellation near
/// the concentric and planar limits.
fn one_minus_abs_g(radius: f64, length: f64) -> f64 {
    if length >= radius {
        (2.0 * radius - length) / radius
    } else {
        length / radius
    }
}

/// `arccos(1 − x)` evaluated as `2 asin(√(x/2))`.
fn acos_one_minus(x: f64) -> f64 {
    2.0 * (x / 2.0).sqrt().asin()
}

fn offset_for(radius: f64, length: f64) -> f64 {
    let fsr = SPEED_OF_LIGHT / (2.0 * length);
    fsr * acos_one_minus(one_minus_abs_g(radius, length)) / PI
}

/// Frequency spacing between a transverse-mode order and the nearest
/// longitudinal resonance, `FSR · arccos(|g|) / π`.
///
/// On the concentric side (`g < 0`) the offset is measured from the
/// higher-frequency longitudinal neighbour.
pub fn transverse_mode_offset(geometry: &CavityGeometry) -> Result<f64, OpticsError> {
    let r = geometry.symmetric_radius()?;
    if !geometry.is_stable() {
        return Err(OpticsError::Unstable {
            critical_distance: geometry.critical_distance(),
        });
    }
    Ok(offset_for(r, geometry.length()))
}

/// Infers the critical distance from a measured transverse-mode offset.
///
/// `cavity_length_estimate` seeds the search; the result is refined on the
/// exact offset map, which is monotone in `d` on `(0, R]`.
pub fn critical_distance_from_offset(
    offset: f64,
    radius: f64,
    cavity_length_estimate: f64,
) -> Result<f64, OpticsError> {
    positive("radius", radius)?;
    positive("cavity_length_estimate", cavity_length_estimate)?;
    let max = offset_for(radius, radius);
    if !(offset > 0.0 && offset <= max) {
        return Err(OpticsError::OffsetOutOfRange { offset, max });
    }
    if offset == max {
        return Ok(radius);
    }

    let at = |d: f64| offset_for(radius, 2.0 * radius - d);
    let residual = |d: f64| (at(d) / offset).ln();

    // First guess from the closed form with the estimated FSR.
    let fsr_est = SPEED_OF_LIGHT / (2.0 * cavity_length_estimate);
    let phase = (PI * offset / fsr_est).min(PI / 2.0);
    let guess = (2.0 * radius * (phase / 2.0).sin().powi(2)).clamp(radius * 1e-15, radius);

    let (mut lo, mut hi) = (guess, guess);
    while residual(lo) > 0.0 && lo > radius * 1e-300 {
        lo /= 4.0;
    }
    while residual(hi) < 0.0 && hi < radius {
        hi = (hi * 4.0).min(radius);
    }
    Ok(brent(residual, lo, hi, 1e-15, 0.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nc(d: f64) -> CavityGeometry {
        CavityGeometry::near_concentric(5.5e-3, 0.995, d).unwrap()
    }

    #[test]
    fn design_point_mode() {
        let m = nc(7.8e-6).mode_geometry(780e-9).unwrap();
        assert!((m.rayleigh_range * 1e6 - 146.4).abs() < 0.05, "{}", m.rayleigh_range);
        assert!((m.waist * 1e6 - 6.03).abs() < 0.005, "{}", m.waist);
        assert!(m.waist_at_mirror > m.waist);
        assert!(m.stable);
    }

    #[test]
    fn confocal_rayleigh_range() {
        let g = CavityGeometry::symmetric(5.5e-3, 0.995, 5.5e-3).unwrap();
        let m = g.mode_geometry(780e-9).unwrap();
        assert!((m.rayleigh_range - 2.75e-3).abs() < 1e-15);
    }

    #[test]
    fn waist_shrinks_towards_concentric() {
        let mut prev: Option<ModeGeometry> = None;
        for i in 0..=200 {
            let d = 100e-6 * (1e-4f64).powf(i as f64 / 200.0);
            let m = nc(d).mode_geometry(780e-9).unwrap();
            if let Some(p) = prev {
                assert!(m.waist < p.waist);
                assert!(m.waist_at_mirror > p.waist_at_mirror);
            }
            prev = Some(m);
        }
    }

    #[test]
    fn rejects_unstable_and_asymmetric() {
        let g = CavityGeometry::symmetric(5.5e-3, 0.995, 11e-3).unwrap();
        assert!(matches!(g.mode_geometry(780e-9), Err(OpticsError::Unstable { .. })));
        assert!(matches!(transverse_mode_offset(&g), Err(OpticsError::Unstable { .. })));
        let m1 = super::super::MirrorSpec::new(5.5e-3, 0.995).unwrap();
        let m2 = super::super::MirrorSpec::new(6.0e-3, 0.995).unwrap();
        let g = CavityGeometry::new(m1, m2, 11e-3).unwrap();
        assert!(matches!(g.mode_geometry(780e-9), Err(OpticsError::Asymmetric { .. })));
    }

    #[test]
    fn offset_at_design_point() {
        let g = nc(7.8e-6);
        let off = transverse_mode_offset(&g).unwrap();
        assert!((off / 1e6 - 231.2).abs() < 0.1, "{off}");
        let small_d = g.free_spectral_range() / PI * (2.0 * 7.8e-6 / 5.5e-3f64).sqrt();
        assert!(((off - small_d) / off).abs() < 0.02);
    }

    #[test]
    fn offset_limits() {
        let g = CavityGeometry::symmetric(5.5e-3, 0.995, 5.5e-3).unwrap();
        let off = transverse_mode_offset(&g).unwrap();
        assert!((off - g.free_spectral_range() / 2.0).abs() < 1e-3);
        assert!(transverse_mode_offset(&nc(1e-12)).unwrap() < 1e6);
    }

    #[test]
    fn inverts_design_point() {
        let off = transverse_mode_offset(&nc(7.8e-6)).unwrap();
        let d = critical_distance_from_offset(off, 5.5e-3, 11e-3).unwrap();
        assert!(((d - 7.8e-6) / 7.8e-6).abs() < 1e-9);
        let d = critical_distance_from_offset(231e6, 5.5e-3, 11e-3).unwrap();
        assert!((d * 1e6 - 7.8).abs() < 0.02, "{d}");
    }

    #[test]
    fn confocal_offset_inverts_to_radius() {
        let g = CavityGeometry::symmetric(5.5e-3, 0.995, 5.5e-3).unwrap();
        let off = transverse_mode_offset(&g).unwrap();
        let d = critical_distance_from_offset(off, 5.5e-3, 11e-3).unwrap();
        assert!(((d - 5.5e-3) / 5.5e-3).abs() < 1e-9);
    }

    #[test]
    fn offset_out_of_range() {
        let max = SPEED_OF_LIGHT / (4.0 * 5.5e-3);
        for off in [0.0, -1.0, max * 1.001] {
            assert!(matches!(
                critical_distance_from_offset(off, 5.5e-3, 11e-3),
                Err(OpticsError::OffsetOutOfRange { .. })
            ));
        }
    }
}
