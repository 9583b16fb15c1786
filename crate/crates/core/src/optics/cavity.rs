use std::f64::consts::PI;

use super::mirror::{finesse, MirrorSpec};
use super::{positive, OpticsError};
use crate::units::{optical_frequency, AngularFrequency, SPEED_OF_LIGHT};

/// Two mirrors facing each other at a fixed separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry {
    mirror_1: MirrorSpec,
    mirror_2: MirrorSpec,
    length: f64,
}

impl CavityGeometry {
    pub fn new(mirror_1: MirrorSpec, mirror_2: MirrorSpec, length: f64) -> Result<Self, OpticsError> {
        Ok(Self {
            mirror_1,
            mirror_2,
            length: positive("length", length)?,
        })
    }

    /// Identical mirrors separated by `length`.
    pub fn symmetric(radius: f64, reflectivity: f64, length: f64) -> Result<Self, OpticsError> {
        let m = MirrorSpec::new(radius, reflectivity)?;
        Self::new(m, m, length)
    }

    /// Identical mirrors at `2R - critical_distance`.
    pub fn near_concentric(
        radius: f64,
        reflectivity: f64,
        critical_distance: f64,
    ) -> Result<Self, OpticsError> {
        positive("critical_distance", critical_distance)?;
        Self::symmetric(radius, reflectivity, 2.0 * radius - critical_distance)
    }

    pub fn mirror_1(&self) -> &MirrorSpec {
        &self.mirror_1
    }

    pub fn mirror_2(&self) -> &MirrorSpec {
        &self.mirror_2
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Same mirrors at a new separation.
    pub fn with_length(&self, length: f64) -> Result<Self, OpticsError> {
        Self::new(self.mirror_1, self.mirror_2, length)
    }

    /// Distance left to the concentric point, `R₁ + R₂ − L`.
    pub fn critical_distance(&self) -> f64 {
        self.mirror_1.radius_of_curvature() + self.mirror_2.radius_of_curvature() - self.length
    }

    /// `(g₁, g₂)` with `gᵢ = 1 − L/Rᵢ`.
    pub fn stability_factors(&self) -> (f64, f64) {
        (
            1.0 - self.length / self.mirror_1.radius_of_curvature(),
            1.0 - self.length / self.mirror_2.radius_of_curvature(),
        )
    }

    pub fn stability_product(&self) -> f64 {
        let (g1, g2) = self.stability_factors();
        g1 * g2
    }

    /// `0 ≤ g₁g₂ < 1`, with the concentric side additionally requiring `d > 0`.
    pub fn is_stable(&self) -> bool {
        let p = self.stability_product();
        (0.0..1.0).contains(&p) && self.critical_distance() > 0.0
    }

    pub fn is_symmetric(&self) -> bool {
        let r1 = self.mirror_1.radius_of_curvature();
        let r2 = self.mirror_2.radius_of_curvature();
        (r1 - r2).abs() <= 1e-12 * r1.max(r2)
    }

    pub fn free_spectral_range(&self) -> f64 {
        SPEED_OF_LIGHT / (2.0 * self.length)
    }

    pub fn finesse(&self) -> f64 {
        finesse(&self.mirror_1, &self.mirror_2)
    }

    pub fn spectral_profile(&self) -> SpectralProfile {
        SpectralProfile::new(self.free_spectral_range(), self.finesse())
    }
}

/// Longitudinal-mode spectrum of a cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralProfile {
    pub free_spectral_range: f64,
    pub finesse: f64,
    /// Resonance full width at half maximum, Hz.
    pub full_linewidth: f64,
    /// Field decay rate κ (half the angular FWHM).
    pub half_linewidth_kappa: AngularFrequency,
}

impl SpectralProfile {
    pub fn new(free_spectral_range: f64, finesse: f64) -> Self {
        let full_linewidth = free_spectral_range / finesse;
        Self {
            free_spectral_range,
            finesse,
            full_linewidth,
            half_linewidth_kappa: AngularFrequency::from_rad_per_s(PI * full_linewidth),
        }
    }

    /// Resonance quality factor `ν / Δν` at the given wavelength.
    pub fn quality_factor(&self, wavelength: f64) -> f64 {
        optical_frequency(wavelength) / self.full_linewidth
    }
}

/// Resonance fluctuation relative to the linewidth: `δL / (λ/2) · F`.
pub fn noise_limit_factor(delta_l_rms: f64, wavelength: f64, finesse: f64) -> f64 {
    delta_l_rms / (wavelength / 2.0) * finesse
}

/// Length fluctuation that produces the noise-limit factor `xi`.
pub fn noise_limit_length(xi: f64, wavelength: f64, finesse: f64) -> f64 {
    xi * (wavelength / 2.0) / finesse
}

/// Resonance frequency shift `ν δL / L` produced by a length change.
pub fn length_noise_to_frequency(delta_l: f64, geometry: &CavityGeometry, wavelength: f64) -> f64 {
    optical_frequency(wavelength) * delta_l / geometry.length()
}

/// Inverse of [`length_noise_to_frequency`].
pub fn frequency_noise_to_length(delta_nu: f64, geometry: &CavityGeometry, wavelength: f64) -> f64 {
    delta_nu * geometry.length() / optical_frequency(wavelength)
}
