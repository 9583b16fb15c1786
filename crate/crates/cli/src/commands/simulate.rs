use std::path::PathBuf;

use clap::Args;
use nckit_core::lockloop::{
    bode_sweep, log_frequencies, loop_analysis, simulate_lock, ControllerConfig, LoopAnalysis, LoopError, OpenLoop,
    SimulationOptions,
};
use nckit_core::noise::{estimate_psd, write_trace};
use nckit_core::optics::length_noise_to_frequency;
use nckit_core::Execution;
use serde_json::Value;

use super::analyze::budget_json;
use super::TraceArgs;
use crate::config::ProjectConfig;
use crate::error::{config, io, CliError};
use crate::report::{emit, write_columns, Report};
use crate::svg;

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: TraceArgs,
    /// Integral gain K_i in 1/s; overrides the config.
    #[arg(long)]
    pub gain: Option<f64>,
    /// Proportional gain; overrides the config.
    #[arg(long)]
    pub proportional: Option<f64>,
    /// Phase-margin target in degrees; overrides the config.
    #[arg(long)]
    pub margin: Option<f64>,
    /// Residual length trace, same CSV layout as the input.
    #[arg(long)]
    pub residual_out: Option<PathBuf>,
    /// Open-loop Bode data: `freq_hz,mag_db,phase_deg`.
    #[arg(long)]
    pub bode_out: Option<PathBuf>,
    /// Input and residual densities on one log-log plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// JSON report; printed to stdout when absent.
    #[arg(long)]
    pub report_out: Option<PathBuf>,
}

fn analysis_json(a: &LoopAnalysis) -> Value {
    Report::new()
        .num("crossover_frequency_hz", a.crossover_frequency)
        .num("phase_margin_deg", a.phase_margin)
        .num("margin_target_deg", a.margin_target)
        .num("max_bandwidth_at_margin_hz", a.max_bandwidth_at_margin)
        .value("margin_achievable", a.margin_achievable)
        .value("stable_at_margin_bandwidth", a.stable_at_margin_bandwidth)
        .opt("max_stable_bandwidth_hz", a.max_stable_bandwidth)
        .value("stable", a.stable)
        .into_value()
}

fn loop_error(e: LoopError) -> CliError {
    match e {
        LoopError::InvalidParameter { .. } | LoopError::SampleRateMismatch { .. } => config("controller", e),
        other => CliError::Loop(other.to_string()),
    }
}

pub fn run(cfg: &ProjectConfig, args: &SimulateArgs) -> Result<(), CliError> {
    let r = cfg.resolve()?;
    let input = args.input.load(&r)?;
    let noise = &input.trace;
    let fs = noise.sample_rate();

    let ki = args.gain.unwrap_or(cfg.controller.integral_gain_per_s);
    let kp = args.proportional.unwrap_or(cfg.controller.proportional_gain);
    for (name, v) in [("--gain", ki), ("--proportional", kp)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(config(name, format!("{v} must be finite and non-negative")));
        }
    }
    let margin = args.margin.unwrap_or(cfg.controller.margin_deg);
    if !(0.0..=180.0).contains(&margin) {
        return Err(config("--margin", format!("{margin} must lie in [0, 180]")));
    }
    let sample_rate = cfg.controller.sample_rate_hz.unwrap_or(fs);
    let controller = ControllerConfig {
        integral_gain: ki,
        proportional_gain: kp,
        sample_rate,
    };
    let discriminator = cfg.discriminator(&r)?;
    let ol = OpenLoop::new(controller, r.plant, discriminator).map_err(loop_error)?;

    // An open loop has no crossover to analyse.
    let analysis = if controller.is_open() {
        None
    } else {
        let a = loop_analysis(&ol, margin).map_err(loop_error)?;
        if !a.stable {
            return Err(CliError::Loop(format!(
                "closed loop is unstable at integral gain {ki} /s, proportional gain {kp}; stability is lost above {} Hz crossover",
                a.max_stable_bandwidth.map_or("n/a".into(), |f| format!("{f:.1}"))
            )));
        }
        Some(a)
    };

    if let Some(p) = &args.bode_out {
        let f0 = r.plant.resonance_frequency;
        let freqs = log_frequencies(f0 * 1e-3, (fs / 2.0).min(f0 * 1e2), 2000);
        let pts = bode_sweep(&ol, &freqs, Execution::default()).map_err(loop_error)?;
        let f: Vec<f64> = pts.iter().map(|p| p.frequency).collect();
        let m: Vec<f64> = pts.iter().map(|p| p.magnitude_db).collect();
        let ph: Vec<f64> = pts.iter().map(|p| p.phase_deg).collect();
        write_columns(p, &["freq_hz", "mag_db", "phase_deg"], &[&f, &m, &ph])?;
    }

    let mut welch = r.welch;
    welch.segment_length = welch.segment_length.min(noise.len());
    let opts = SimulationOptions {
        welch,
        bands: cfg.noise.bands_hz.iter().map(|b| (b[0], b[1])).collect(),
        ..SimulationOptions::default()
    };
    let sim = simulate_lock(noise, &ol, &opts).map_err(loop_error)?;

    if let Some(p) = &args.residual_out {
        let file = std::fs::File::create(p).map_err(|e| io(p, e))?;
        write_trace(&sim.residual, std::io::BufWriter::new(file)).map_err(|e| io(p, e))?;
    }
    let input_psd = estimate_psd(noise, &welch).map_err(|e| CliError::Ingest(e.to_string()))?;
    if let Some(p) = &args.svg {
        let plot = svg::log_log(
            "Length noise, open and closed loop",
            "frequency (Hz)",
            "PSD (m^2/Hz)",
            &[
                svg::Series {
                    label: "input",
                    x: input_psd.frequencies(),
                    y: input_psd.density(),
                },
                svg::Series {
                    label: "residual",
                    x: sim.psd.frequencies(),
                    y: sim.psd.density(),
                },
            ],
        );
        std::fs::write(p, plot).map_err(|e| io(p, e))?;
    }

    let mut budget = sim.budget.clone();
    budget.frequency_rms = Some(length_noise_to_frequency(budget.total_rms, &r.cavity, r.atom.wavelength()));
    let input_rms = input_psd.total_variance().sqrt();
    let report = Report::new()
        .num("integral_gain_per_s", ki)
        .num("proportional_gain", kp)
        .num("sample_rate_hz", fs)
        .value("analysis", analysis.as_ref().map_or(Value::Null, analysis_json))
        .num("input_rms_m", input_rms)
        .value("residual", budget_json(&sim.psd, &budget))
        .num(
            "suppression",
            if input_rms > 0.0 { budget.total_rms / input_rms } else { f64::NAN },
        )
        .into_value();

    if let Some(a) = &analysis {
        eprintln!(
            "crossover {:.1} Hz, phase margin {:.1} deg, max bandwidth at {margin} deg margin {:.1} Hz{}",
            a.crossover_frequency,
            a.phase_margin,
            a.max_bandwidth_at_margin,
            if a.stable_at_margin_bandwidth { "" } else { " (closed loop unstable there)" }
        );
    }
    eprintln!("residual rms {:.4e} m of {:.4e} m input", budget.total_rms, input_rms);
    emit(&report, args.report_out.as_deref())
}
