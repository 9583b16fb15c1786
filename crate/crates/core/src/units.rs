//! Physical constants and unit helpers.

use std::f64::consts::PI;
use std::fmt;


/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// One ångström in metres.
pub const ANGSTROM: f64 = 1e-10;

/// Vacuum optical frequency of light with the given wavelength, Hz.
#[inline]
pub fn optical_frequency(wavelength: f64) -> f64 {
    SPEED_OF_LIGHT / wavelength
}

/// An angular frequency in rad/s.
///
/// Linewidths and coupling rates are quoted as `2π × f`; wrapping them keeps
/// the factor of 2π from silently going missing when mixed with plain Hz.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct AngularFrequency(pub f64);

impl AngularFrequency {
    /// `2π × hz`.
    #[inline]
    pub fn from_hz(hz: f64) -> Self {
        Self(2.0 * PI * hz)
    }

    #[inline]
    pub fn from_rad_per_s(w: f64) -> Self {
        Self(w)
    }

    #[inline]
    pub fn rad_per_s(self) -> f64 {
        self.0
    }

    /// The ordinary frequency `ω / 2π`.
    #[inline]
    pub fn hz(self) -> f64 {
        self.0 / (2.0 * PI)
    }
}

impl fmt::Display for AngularFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2π × {:.4} MHz", self.hz() / 1e6)
    }
}
