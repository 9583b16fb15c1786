use std::f64::consts::PI;

use super::{positive, OpticsError};

/// A spherical cavity mirror.
///
/// `reflectivity` and `transmission` are intensity coefficients. Whatever
/// is neither reflected nor transmitted is loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorSpec {
    radius_of_curvature: f64,
    reflectivity: f64,
    transmission: f64,
}

impl MirrorSpec {
    /// A lossless mirror: transmission is `1 - reflectivity`.
    pub fn new(radius_of_curvature: f64, reflectivity: f64) -> Result<Self, OpticsError> {
        check_reflectivity(reflectivity)?;
        Ok(Self {
            radius_of_curvature: positive("radius_of_curvature", radius_of_curvature)?,
            reflectivity,
            transmission: 1.0 - reflectivity,
        })
    }

    /// Overrides the transmission; `1 - reflectivity - transmission` becomes loss.
    pub fn with_transmission(mut self, transmission: f64) -> Result<Self, OpticsError> {
        if !(0.0..1.0).contains(&transmission) || transmission + self.reflectivity > 1.0 {
            return Err(OpticsError::InvalidParameter {
                name: "transmission",
                value: transmission,
                reason: "must lie in [0, 1 - reflectivity]",
            });
        }
        self.transmission = transmission;
        Ok(self)
    }

    pub fn radius_of_curvature(&self) -> f64 {
        self.radius_of_curvature
    }

    pub fn reflectivity(&self) -> f64 {
        self.reflectivity
    }

    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    pub fn loss(&self) -> f64 {
        (1.0 - self.reflectivity - self.transmission).max(0.0)
    }

    /// Field (amplitude) reflection coefficient `√R`.
    pub fn amplitude_reflectivity(&self) -> f64 {
        self.reflectivity.sqrt()
    }

    /// Field transmission coefficient `√T`.
    pub fn amplitude_transmission(&self) -> f64 {
        self.transmission.sqrt()
    }
}

fn check_reflectivity(r: f64) -> Result<(), OpticsError> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(OpticsError::InvalidParameter {
            name: "reflectivity",
            value: r,
            reason: "must lie strictly between 0 and 1",
        })
    }
}

/// Coefficient-of-finesse form `π (R₁R₂)^¼ / (1 − √(R₁R₂))`.
pub fn finesse_from_reflectivities(r1: f64, r2: f64) -> Result<f64, OpticsError> {
    check_reflectivity(r1)?;
    check_reflectivity(r2)?;
    let rr = (r1 * r2).sqrt();
    Ok(PI * rr.sqrt() / (1.0 - rr))
}

pub fn finesse(mirror_1: &MirrorSpec, mirror_2: &MirrorSpec) -> f64 {
    let rr = (mirror_1.reflectivity * mirror_2.reflectivity).sqrt();
    PI * rr.sqrt() / (1.0 - rr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reported_mirror_finesse() {
        let f = finesse_from_reflectivities(0.995, 0.995).unwrap();
        assert!((f - 626.75).abs() < 0.01, "{f}");
        assert_eq!(f.round(), 627.0);
    }

    #[test]
    fn lower_reflectivity() {
        let f = finesse_from_reflectivities(0.99, 0.99).unwrap();
        assert!((f - 312.58).abs() < 0.01, "{f}");
    }

    #[test]
    fn vanishing_reflectivity_gives_vanishing_finesse() {
        let f = finesse_from_reflectivities(1e-12, 1e-12).unwrap();
        assert!(f < 1e-5);
    }

    #[test]
    fn rejects_out_of_range() {
        for r in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(finesse_from_reflectivities(r, 0.9).is_err());
            assert!(MirrorSpec::new(5.5e-3, r).is_err());
        }
        assert!(MirrorSpec::new(0.0, 0.9).is_err());
    }

    #[test]
    fn transmission_and_loss() {
        let m = MirrorSpec::new(5.5e-3, 0.995).unwrap();
        assert!((m.transmission() - 0.005).abs() < 1e-15);
        assert!(m.loss() < 1e-15);
        let lossy = m.with_transmission(0.004).unwrap();
        assert!((lossy.loss() - 0.001).abs() < 1e-12);
        assert!(m.with_transmission(0.01).is_err());
    }
}
