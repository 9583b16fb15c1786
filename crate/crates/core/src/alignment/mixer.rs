use super::{AlignmentError, Channel};

/// `(V_A, V_B, V_C)ᵀ = G · M · (ΔL, T_tip, T_tilt)ᵀ`.
pub const MIXING_MATRIX: [[f64; 3]; 3] = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]];

/// Exact inverse of [`MIXING_MATRIX`].
pub const UNMIXING_MATRIX: [[f64; 3]; 3] = [[0.0, 0.5, 0.5], [0.5, -0.5, 0.0], [0.5, 0.0, -0.5]];

/// Length and tip/tilt corrections, all as length equivalents at the actuator (m).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ActuatorCommand {
    pub delta_length: f64,
    pub tip: f64,
    pub tilt: f64,
}

impl ActuatorCommand {
    pub fn new(delta_length: f64, tip: f64, tilt: f64) -> Self {
        Self { delta_length, tip, tilt }
    }

    fn as_array(&self) -> [f64; 3] {
        [self.delta_length, self.tip, self.tilt]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ActuatorVoltages {
    pub v_a: f64,
    pub v_b: f64,
    pub v_c: f64,
}

impl ActuatorVoltages {
    pub fn new(v_a: f64, v_b: f64, v_c: f64) -> Self {
        Self { v_a, v_b, v_c }
    }

    pub fn channels(&self) -> [f64; 3] {
        [self.v_a, self.v_b, self.v_c]
    }

    /// Channels outside `[0, limit]`, with their requested voltage.
    pub fn saturated(&self, limit: f64) -> Vec<(Channel, f64)> {
        Channel::ALL
            .into_iter()
            .zip(self.channels())
            .filter(|(_, v)| !(0.0..=limit).contains(v))
            .collect()
    }

    pub fn validate(&self, limit: f64) -> Result<(), AlignmentError> {
        let channels = self.saturated(limit);
        if channels.is_empty() {
            Ok(())
        } else {
            Err(AlignmentError::Saturation { channels, limit })
        }
    }

    pub fn clamped(&self, limit: f64) -> Self {
        let c = |v: f64| v.clamp(0.0, limit);
        Self::new(c(self.v_a), c(self.v_b), c(self.v_c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixerConfig {
    /// Transducer gain G, V/m.
    pub gain: f64,
    pub voltage_limit: f64,
    /// Free-stroke expansion per volt, m/V.
    pub expansion_per_volt: f64,
    /// Operating point the mixed voltages are added to, V.
    pub bias_voltage: f64,
}

impl Default for MixerConfig {
    /// 15 µm at 100 V, with the gain set to the inverse stroke so that
    /// commands are actuator expansions.
    fn default() -> Self {
        let expansion_per_volt = 15e-6 / 100.0;
        Self {
            gain: 1.0 / expansion_per_volt,
            voltage_limit: 100.0,
            expansion_per_volt,
            bias_voltage: 0.0,
        }
    }
}

impl MixerConfig {
    pub fn validate(&self) -> Result<(), AlignmentError> {
        let check = |name, value: f64| {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(AlignmentError::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and strictly positive",
                })
            }
        };
        check("gain", self.gain)?;
        check("voltage_limit", self.voltage_limit)?;
        check("expansion_per_volt", self.expansion_per_volt)?;
        if !self.bias_voltage.is_finite() {
            return Err(AlignmentError::InvalidParameter {
                name: "bias_voltage",
                value: self.bias_voltage,
                reason: "must be finite",
            });
        }
        Ok(())
    }
}

fn apply(m: &[[f64; 3]; 3], x: [f64; 3]) -> [f64; 3] {
    m.map(|row| row[0] * x[0] + row[1] * x[1] + row[2] * x[2])
}

/// Linear mixing; no range check.
pub fn mix_commands(cmd: &ActuatorCommand, cfg: &MixerConfig) -> ActuatorVoltages {
    let [a, b, c] = apply(&MIXING_MATRIX, cmd.as_array()).map(|v| cfg.bias_voltage + cfg.gain * v);
    ActuatorVoltages::new(a, b, c)
}

/// Mixing that refuses voltages outside `[0, voltage_limit]`.
pub fn mix_commands_checked(
    cmd: &ActuatorCommand,
    cfg: &MixerConfig,
) -> Result<ActuatorVoltages, AlignmentError> {
    let v = mix_commands(cmd, cfg);
    v.validate(cfg.voltage_limit)?;
    Ok(v)
}

pub fn unmix_voltages(v: &ActuatorVoltages, cfg: &MixerConfig) -> ActuatorCommand {
    let x = v.channels().map(|u| (u - cfg.bias_voltage) / cfg.gain);
    let [dl, tip, tilt] = apply(&UNMIXING_MATRIX, x);
    ActuatorCommand::new(dl, tip, tilt)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expansion {
    pub length: f64,
    pub clamped: bool,
}

/// Linear piezo stroke; voltages outside the operating range are clamped
/// and flagged.
pub fn actuator_expansion(voltage: f64, cfg: &MixerConfig) -> Expansion {
    let v = voltage.clamp(0.0, cfg.voltage_limit);
    Expansion {
        length: cfg.expansion_per_volt * v,
        clamped: v != voltage,
    }
}
