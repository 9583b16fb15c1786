//! Resonator spectral properties, near-concentric mode geometry and
//! atom-cavity coupling.
//!
//! Only symmetric cavities (equal radii of curvature) are handled by the
//! mode-geometry functions; asymmetric input is rejected.

mod cavity;
mod coupling;
mod mirror;
mod mode;

use thiserror::Error;

use crate::solve::RootError;

pub use cavity::{
    frequency_noise_to_length, length_noise_to_frequency, noise_limit_factor,
    noise_limit_length, CavityGeometry, SpectralProfile,
};
pub use coupling::{
    cooperativity, solve_critical_distance, standing_wave_coupling, AtomLine, CouplingReport,
    DesignTarget,
};
pub use mirror::{finesse, finesse_from_reflectivities, MirrorSpec};
pub use mode::{critical_distance_from_offset, transverse_mode_offset, ModeGeometry};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpticsError {
    #[error("{name} = {value} is invalid: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("mirror radii differ ({r1} m vs {r2} m); only symmetric cavities are supported")]
    Asymmetric { r1: f64, r2: f64 },
    #[error("geometry is outside the stable region (critical distance {critical_distance} m)")]
    Unstable { critical_distance: f64 },
    #[error("transverse mode offset {offset} Hz outside the attainable range (0, {max}] Hz")]
    OffsetOutOfRange { offset: f64, max: f64 },
    #[error("target {target} is not attainable; reachable range is [{min}, {max}]")]
    NoSolution { target: f64, min: f64, max: f64 },
    #[error(transparent)]
    Root(#[from] RootError),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, OpticsError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(OpticsError::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}
