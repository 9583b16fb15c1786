use std::str::FromStr;

use super::AlignmentError;

/// Effect of a transverse mirror displacement on a near-concentric cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseState {
    pub delta_x: f64,
    /// Rotation of the cavity axis through both centres of curvature.
    pub axis_rotation: f64,
    /// Mirror rotation that restores the original axis.
    pub mirror_tilt_correction: f64,
}

/// `δθ = atan(δx/d)`, `δα = δx/R`.
pub fn transverse_compensation(
    delta_x: f64,
    critical_distance: f64,
    radius: f64,
) -> Result<TransverseState, AlignmentError> {
    if critical_distance == 0.0 {
        return Err(AlignmentError::Degenerate);
    }
    if !(critical_distance.is_finite() && critical_distance > 0.0) {
        return Err(AlignmentError::InvalidParameter {
            name: "critical_distance",
            value: critical_distance,
            reason: "must be finite and strictly positive",
        });
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(AlignmentError::InvalidParameter {
            name: "radius",
            value: radius,
            reason: "must be finite and strictly positive",
        });
    }
    Ok(TransverseState {
        delta_x,
        axis_rotation: (delta_x / critical_distance).atan(),
        mirror_tilt_correction: delta_x / radius,
    })
}

/// Tension-member and actuator-base variants of the support structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureConfiguration {
    Clamp,
    Spring,
    ParallelBase,
    RotatedBase45,
}

impl StructureConfiguration {
    pub const ALL: [StructureConfiguration; 4] = [
        StructureConfiguration::Clamp,
        StructureConfiguration::Spring,
        StructureConfiguration::ParallelBase,
        StructureConfiguration::RotatedBase45,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StructureConfiguration::Clamp => "clamp",
            StructureConfiguration::Spring => "spring",
            StructureConfiguration::ParallelBase => "parallel-base",
            StructureConfiguration::RotatedBase45 => "rotated-base-45",
        }
    }
}

impl FromStr for StructureConfiguration {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown structure configuration `{s}`"))
    }
}

/// Maximum transverse displacement observed for each configuration, m.
pub fn displacement_budget(configuration: StructureConfiguration) -> f64 {
    match configuration {
        StructureConfiguration::Clamp => 3.75e-6,
        StructureConfiguration::Spring => 1.25e-6,
        StructureConfiguration::ParallelBase => 7e-6,
        StructureConfiguration::RotatedBase45 => 3.75e-6,
    }
}
