use clap::Args;
use nckit_core::alignment::{
    actuator_expansion, frame_pose, mix_commands, unmix_voltages, ActuatorCommand, ActuatorVoltages,
};
use serde_json::Value;

use crate::config::ProjectConfig;
use crate::error::CliError;
use crate::quantity;
use crate::report::{emit, exact, Report};

#[derive(Debug, Args)]
pub struct AlignArgs {
    /// Length correction ΔL, e.g. `2um`.
    #[arg(long, value_parser = quantity::length, allow_hyphen_values = true, conflicts_with = "volts")]
    pub dl: Option<f64>,
    /// Tip correction as a length at the actuator.
    #[arg(long, value_parser = quantity::length, allow_hyphen_values = true, conflicts_with = "volts")]
    pub tip: Option<f64>,
    /// Tilt correction as a length at the actuator.
    #[arg(long, value_parser = quantity::length, allow_hyphen_values = true, conflicts_with = "volts")]
    pub tilt: Option<f64>,
    /// Actuator voltages `A,B,C` to convert back into a command.
    #[arg(long, value_parser = quantity::triple, allow_hyphen_values = true)]
    pub volts: Option<[f64; 3]>,
    /// Fail with exit code 5 instead of warning when a channel saturates.
    #[arg(long)]
    pub strict: bool,
}

fn command_json(c: &ActuatorCommand) -> Value {
    Report::new()
        .value("delta_length_m", exact(c.delta_length))
        .value("tip_m", exact(c.tip))
        .value("tilt_m", exact(c.tilt))
        .into_value()
}

fn voltages_json(v: &ActuatorVoltages) -> Value {
    Report::new()
        .value("v_a", exact(v.v_a))
        .value("v_b", exact(v.v_b))
        .value("v_c", exact(v.v_c))
        .into_value()
}

/// Values here are printed at full precision so that voltages can be fed
/// back through `--volts` without loss.
pub fn run(cfg: &ProjectConfig, args: &AlignArgs) -> Result<(), CliError> {
    let r = cfg.resolve()?;
    let mixer = &r.mixer;

    let (command, voltages, mode) = match args.volts {
        Some([a, b, c]) => {
            let v = ActuatorVoltages::new(a, b, c);
            (unmix_voltages(&v, mixer), v, "unmix")
        }
        None => {
            let cmd = ActuatorCommand::new(args.dl.unwrap_or(0.0), args.tip.unwrap_or(0.0), args.tilt.unwrap_or(0.0));
            (cmd, mix_commands(&cmd, mixer), "mix")
        }
    };

    let saturated = voltages.saturated(mixer.voltage_limit);
    let expansions = voltages.channels().map(|v| actuator_expansion(v, mixer).length);
    let pose = frame_pose(expansions, &r.frame);

    let report = Report::new()
        .value("mode", mode)
        .value("command", command_json(&command))
        .value("voltages", voltages_json(&voltages))
        .value(
            "expansions_m",
            Value::Array(expansions.iter().map(|&x| exact(x)).collect()),
        )
        .value(
            "frame_pose",
            Report::new()
                .value("mean_displacement_m", exact(pose.mean_displacement))
                .value("tip_rad", exact(pose.tip))
                .value("tilt_rad", exact(pose.tilt))
                .into_value(),
        )
        .value(
            "saturated",
            Value::Array(saturated.iter().map(|(ch, _)| Value::from(format!("{ch:?}"))).collect()),
        )
        .into_value();

    if !saturated.is_empty() {
        let list: Vec<String> = saturated.iter().map(|(ch, v)| format!("{ch:?} = {v} V")).collect();
        let msg = format!(
            "{} outside [0, {}] V",
            list.join(", "),
            mixer.voltage_limit
        );
        if args.strict {
            return Err(CliError::Saturation(msg));
        }
        eprintln!("warning: {msg}; actuators will clamp");
    }
    emit(&report, None)
}
