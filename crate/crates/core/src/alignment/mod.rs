//! Piezo actuator mixing, frame kinematics and misalignment geometry.
//!
//! Three actuators A, B, C separate the two mirror frames. Length and
//! tip/tilt corrections are combined into actuator voltages through a fixed
//! ±1 mixing matrix scaled by the transducer gain. Commands are expressed as
//! length equivalents at the actuator, so the gain is a single V/m factor.

mod frame;
mod mixer;
mod transverse;

use std::fmt;

use thiserror::Error;

pub use frame::{frame_pose, FrameGeometry, FramePose};
pub use mixer::{
    actuator_expansion, mix_commands, mix_commands_checked, unmix_voltages, ActuatorCommand,
    ActuatorVoltages, Expansion, MixerConfig, MIXING_MATRIX, UNMIXING_MATRIX,
};
pub use transverse::{displacement_budget, transverse_compensation, StructureConfiguration, TransverseState};

/// Actuator channel label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    A,
    B,
    C,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::A, Channel::B, Channel::C];
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Channel::A => "A",
            Channel::B => "B",
            Channel::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlignmentError {
    #[error("{name} = {value} is invalid: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("channel(s) {} outside [0, {limit}] V", list_channels(.channels))]
    Saturation {
        channels: Vec<(Channel, f64)>,
        limit: f64,
    },
    #[error("actuator positions are collinear")]
    Collinear,
    #[error("critical distance is zero: the cavity axis is undefined at the concentric point")]
    Degenerate,
}

fn list_channels(channels: &[(Channel, f64)]) -> String {
    channels
        .iter()
        .map(|(c, v)| format!("{c} ({v:.3} V)"))
        .collect::<Vec<_>>()
        .join(", ")
}
