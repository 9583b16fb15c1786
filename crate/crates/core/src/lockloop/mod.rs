//! Pound-Drever-Hall discriminator, mechanical plant, open-loop analysis and
//! a discrete-time simulation of the cavity length lock.

mod analysis;
mod pdh;
mod plant;
mod simulate;
mod transfer;

use thiserror::Error;

use crate::noise::NoiseError;
use crate::optics::OpticsError;
use crate::solve::RootError;

pub use analysis::{closed_loop_stable, loop_analysis, LoopAnalysis};
pub use pdh::{
    cavity_reflection, cavity_transmission, discriminator_profile, discriminator_slope,
    pdh_error, DiscriminatorProfile, PDHConfig,
};
pub use plant::{plant_response, PlantModel};
pub use simulate::{simulate_lock, LockSimulation, SimulationOptions};
pub use transfer::{
    bode_sweep, log_frequencies, BodePoint, ControllerConfig, Discriminator, OpenLoop,
    TransferFunction,
};

#[derive(Debug, Error)]
pub enum LoopError {
    #[error("{name} = {value} is invalid: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("cavity full linewidth {linewidth} Hz is not below the modulation frequency {modulation} Hz")]
    DegenerateSlope { linewidth: f64, modulation: f64 },
    #[error("open-loop gain never crosses unity in [{f_min}, {f_max}] Hz")]
    NoCrossover { f_min: f64, f_max: f64 },
    #[error("controller sample rate {controller} Hz differs from trace sample rate {trace} Hz")]
    SampleRateMismatch { controller: f64, trace: f64 },
    #[error("loop diverged with integral gain {integral_gain} /s and proportional gain {proportional_gain}")]
    UnstableLoop {
        integral_gain: f64,
        proportional_gain: f64,
    },
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    Root(#[from] RootError),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, LoopError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(LoopError::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64, LoopError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(LoopError::InvalidParameter {
            name,
            value,
            reason: "must be finite and non-negative",
        })
    }
}
