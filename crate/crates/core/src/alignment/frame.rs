use super::AlignmentError;

/// Positions of actuators A, B, C in the frame plane, m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameGeometry {
    actuator_positions: [[f64; 2]; 3],
}

impl FrameGeometry {
    pub fn new(actuator_positions: [[f64; 2]; 3]) -> Result<Self, AlignmentError> {
        let frame = Self { actuator_positions };
        let (u, v) = frame.edges();
        let scale = u[0].hypot(u[1]) * v[0].hypot(v[1]);
        // also rejects NaN coordinates
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(frame.det().abs() > 1e-12 * scale) {
            return Err(AlignmentError::Collinear);
        }
        Ok(frame)
    }

    /// Equilateral triangle with A on the +y symmetry axis, B and C below it
    /// at −x and +x respectively.
    pub fn equilateral(circumradius: f64) -> Result<Self, AlignmentError> {
        if !(circumradius.is_finite() && circumradius > 0.0) {
            return Err(AlignmentError::InvalidParameter {
                name: "circumradius",
                value: circumradius,
                reason: "must be finite and strictly positive",
            });
        }
        let h = circumradius * 3f64.sqrt() / 2.0;
        Self::new([
            [0.0, circumradius],
            [-h, -circumradius / 2.0],
            [h, -circumradius / 2.0],
        ])
    }

    pub fn actuator_positions(&self) -> &[[f64; 2]; 3] {
        &self.actuator_positions
    }

    fn edges(&self) -> ([f64; 2], [f64; 2]) {
        let [p1, p2, p3] = self.actuator_positions;
        ([p2[0] - p1[0], p2[1] - p1[1]], [p3[0] - p1[0], p3[1] - p1[1]])
    }

    fn det(&self) -> f64 {
        let (u, v) = self.edges();
        u[0] * v[1] - u[1] * v[0]
    }
}

impl Default for FrameGeometry {
    /// Equilateral, 8 mm circumradius.
    fn default() -> Self {
        Self::equilateral(8e-3).expect("valid default frame")
    }
}

/// Orientation of the moving frame.
///
/// Angles are small-angle plane slopes (rad): `tip` is the rotation about
/// the frame x axis (`∂z/∂y`), `tilt` the rotation about the y axis
/// (`∂z/∂x`). Both are exactly linear in the expansions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FramePose {
    pub tip: f64,
    pub tilt: f64,
    pub mean_displacement: f64,
}

/// Plane through the three actuator tips.
pub fn frame_pose(expansions: [f64; 3], frame: &FrameGeometry) -> FramePose {
    let (u, v) = frame.edges();
    let det = frame.det();
    let dz2 = expansions[1] - expansions[0];
    let dz3 = expansions[2] - expansions[0];
    let slope_x = (dz2 * v[1] - u[1] * dz3) / det;
    let slope_y = (u[0] * dz3 - v[0] * dz2) / det;
    FramePose {
        tip: slope_y,
        tilt: slope_x,
        mean_displacement: (expansions[0] + expansions[1] + expansions[2]) / 3.0,
    }
}
