use nckit_core::alignment::{
    actuator_expansion, frame_pose, mix_commands, mix_commands_checked, transverse_compensation,
    unmix_voltages, ActuatorCommand, ActuatorVoltages, AlignmentError, FrameGeometry, MixerConfig,
    MIXING_MATRIX, UNMIXING_MATRIX,
};
use proptest::prelude::*;

/// Plane `z = a x + b y + c` through three points by Gaussian elimination
/// with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn plane_through(points: [[f64; 2]; 3], z: [f64; 3]) -> [f64; 3] {
    let mut m: Vec<[f64; 4]> = (0..3).map(|i| [points[i][0], points[i][1], 1.0, z[i]]).collect();
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        m.swap(col, pivot);
        for row in col + 1..3 {
            let k = m[row][col] / m[col][col];
            for c in col..4 {
                m[row][c] -= k * m[col][c];
            }
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|c| m[row][c] * x[c]).sum();
        x[row] = (m[row][3] - s) / m[row][row];
    }
    x
}

fn point() -> impl Strategy<Value = [f64; 2]> {
    [-0.02f64..0.02, -0.02f64..0.02]
}

proptest! {
    #[test]
    fn mix_unmix_round_trip(
        dl in -5e-6f64..5e-6,
        tip in -5e-6f64..5e-6,
        tilt in -5e-6f64..5e-6,
        gain in 1e5f64..1e8,
        bias in 0.0f64..50.0,
    ) {
        let cfg = MixerConfig { gain, bias_voltage: bias, ..MixerConfig::default() };
        let cmd = ActuatorCommand::new(dl, tip, tilt);
        let back = unmix_voltages(&mix_commands(&cmd, &cfg), &cfg);
        let scale = dl.abs().max(tip.abs()).max(tilt.abs()).max(bias / gain);
        prop_assert!((back.delta_length - dl).abs() <= 1e-12 * scale);
        prop_assert!((back.tip - tip).abs() <= 1e-12 * scale);
        prop_assert!((back.tilt - tilt).abs() <= 1e-12 * scale);
    }

    #[test]
    fn unmix_mix_round_trip(a in 0.0f64..100.0, b in 0.0f64..100.0, c in 0.0f64..100.0) {
        let cfg = MixerConfig::default();
        let v = ActuatorVoltages::new(a, b, c);
        let again = mix_commands(&unmix_voltages(&v, &cfg), &cfg);
        prop_assert!((again.v_a - a).abs() < 1e-12 * 100.0);
        prop_assert!((again.v_b - b).abs() < 1e-12 * 100.0);
        prop_assert!((again.v_c - c).abs() < 1e-12 * 100.0);
    }

    #[test]
    fn pure_length_command_moves_frame_rigidly(dl in 0.0f64..1e-5) {
        let cfg = MixerConfig::default();
        let v = mix_commands(&ActuatorCommand::new(dl, 0.0, 0.0), &cfg);
        prop_assert!(v.v_a == v.v_b && v.v_b == v.v_c);
        let pose = frame_pose(v.channels().map(|x| x * cfg.expansion_per_volt), &FrameGeometry::default());
        prop_assert!(pose.tip.abs() < 1e-12 && pose.tilt.abs() < 1e-12);
        prop_assert!((pose.mean_displacement - dl).abs() < 1e-12);
    }

    #[test]
    fn pose_matches_plane_fit(p1 in point(), p2 in point(), p3 in point(), z in [-1e-5f64..1e-5, -1e-5f64..1e-5, -1e-5f64..1e-5]) {
        let frame = match FrameGeometry::new([p1, p2, p3]) {
            Ok(f) => f,
            Err(_) => return Ok(()),
        };
        // skip nearly degenerate triangles where either method loses digits
        let area = ((p2[0] - p1[0]) * (p3[1] - p1[1]) - (p2[1] - p1[1]) * (p3[0] - p1[0])).abs();
        prop_assume!(area > 1e-6);
        let [a, b, c] = plane_through([p1, p2, p3], z);
        let pose = frame_pose(z, &frame);
        let tol = 1e-9 * (a.abs() + b.abs() + 1e-3);
        prop_assert!((pose.tilt - a).abs() < tol, "{} vs {}", pose.tilt, a);
        prop_assert!((pose.tip - b).abs() < tol, "{} vs {}", pose.tip, b);
        let centroid = [(p1[0] + p2[0] + p3[0]) / 3.0, (p1[1] + p2[1] + p3[1]) / 3.0];
        let z_c = a * centroid[0] + b * centroid[1] + c;
        prop_assert!((pose.mean_displacement - z_c).abs() < 1e-15 + 1e-9 * z_c.abs());
    }

    #[test]
    fn expansion_is_clamped(v in -50.0f64..150.0) {
        let cfg = MixerConfig::default();
        let e = actuator_expansion(v, &cfg);
        prop_assert!(e.length >= 0.0 && e.length <= cfg.expansion_per_volt * cfg.voltage_limit);
        prop_assert_eq!(e.clamped, !(0.0..=cfg.voltage_limit).contains(&v));
    }

    #[test]
    fn axis_rotation_bounded(dx in -1e-5f64..1e-5, d in 1e-7f64..1e-3) {
        let t = transverse_compensation(dx, d, 5.5e-3).unwrap();
        prop_assert!(t.axis_rotation.abs() < std::f64::consts::FRAC_PI_2);
        prop_assert!((t.mirror_tilt_correction * 5.5e-3 - dx).abs() < 1e-18);
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn matrix_product_is_identity() {
    for i in 0..3 {
        for j in 0..3 {
            let s: f64 = (0..3).map(|k| UNMIXING_MATRIX[i][k] * MIXING_MATRIX[k][j]).sum();
            assert_eq!(s, if i == j { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn saturation_names_channels() {
    let cfg = MixerConfig::default();
    let err = mix_commands_checked(&ActuatorCommand::new(0.0, 1e-5, 0.0), &cfg).unwrap_err();
    match err {
        AlignmentError::Saturation { channels, .. } => assert!(!channels.is_empty()),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn collinear_frame_rejected() {
    assert!(FrameGeometry::new([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).is_err());
}

#[test]
fn tip_and_tilt_rows() {
    let cfg = MixerConfig { bias_voltage: 50.0, ..MixerConfig::default() };
    let g = cfg.gain;
    let v = mix_commands(&ActuatorCommand::new(0.0, 1e-6, 0.0), &cfg);
    assert!((v.v_a - v.v_b - 2.0 * g * 1e-6).abs() < 1e-9);
    assert_eq!(v.v_a, v.v_c);
    let v = mix_commands(&ActuatorCommand::new(0.0, 0.0, 1e-6), &cfg);
    assert!((v.v_a - v.v_c - 2.0 * g * 1e-6).abs() < 1e-9);
    assert_eq!(v.v_a, v.v_b);
}
