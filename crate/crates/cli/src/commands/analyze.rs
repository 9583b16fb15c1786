use std::path::PathBuf;

use clap::Args;
use nckit_core::noise::{estimate_psd, NoiseBudget, SpectralDensity};
use nckit_core::optics::length_noise_to_frequency;
use serde_json::Value;

use super::TraceArgs;
use crate::config::ProjectConfig;
use crate::error::{io, CliError};
use crate::quantity;
use crate::report::{emit, write_columns, Report};
use crate::svg;

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: TraceArgs,
    /// Bands as `lo:hi` in Hz, comma separated. Defaults to the config bands.
    #[arg(long, value_parser = quantity::band_list)]
    pub bands: Option<quantity::Bands>,
    /// Density CSV: `frequency_hz,psd_m2_per_hz`.
    #[arg(long)]
    pub psd_out: Option<PathBuf>,
    /// Budget JSON; printed to stdout when absent.
    #[arg(long)]
    pub budget_out: Option<PathBuf>,
    /// Log-log plot of the density.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

pub fn budget_json(psd: &SpectralDensity, budget: &NoiseBudget) -> Value {
    let bands: Vec<Value> = budget
        .bands
        .iter()
        .map(|b| {
            Report::new()
                .num("f_lo_hz", b.f_lo)
                .num("f_hi_hz", b.f_hi)
                .num("rms_m", b.rms)
                .num("fraction", b.fraction)
                .into_value()
        })
        .collect();
    Report::new()
        .num("total_rms_m", budget.total_rms)
        .opt("frequency_rms_hz", budget.frequency_rms)
        .num("resolution_bandwidth_hz", psd.resolution_bandwidth())
        .value("bands", bands)
        .into_value()
}

pub fn run(cfg: &ProjectConfig, args: &AnalyzeArgs) -> Result<(), CliError> {
    let r = cfg.resolve()?;
    let input = args.input.load(&r)?;
    let trace = &input.trace;

    let mut welch = r.welch;
    welch.segment_length = welch.segment_length.min(trace.len());
    let psd = estimate_psd(trace, &welch).map_err(|e| CliError::Ingest(e.to_string()))?;

    let bands = args
        .bands
        .clone()
        .map(|b| b.0)
        .unwrap_or_else(|| cfg.noise.bands_hz.iter().map(|b| (b[0], b[1])).collect());
    let hz_per_meter = length_noise_to_frequency(1.0, &r.cavity, r.atom.wavelength());
    let budget = NoiseBudget::from_psd(&psd, &bands, Some(hz_per_meter))
        .map_err(|e| crate::error::config("--bands", e))?;

    if let Some(p) = &args.psd_out {
        write_columns(p, &["frequency_hz", "psd_m2_per_hz"], &[psd.frequencies(), psd.density()])?;
    }
    if let Some(p) = &args.svg {
        let plot = svg::log_log(
            "Length noise density",
            "frequency (Hz)",
            "PSD (m^2/Hz)",
            &[svg::Series {
                label: "measured",
                x: psd.frequencies(),
                y: psd.density(),
            }],
        );
        std::fs::write(p, plot).map_err(|e| io(p, e))?;
    }

    let mut report = budget_json(&psd, &budget);
    if let (Value::Object(m), Some(n)) = (&mut report, input.out_of_range) {
        m.insert("samples_outside_linear_range".into(), Value::from(n));
    }

    eprintln!("total rms: {:.4e} m ({:.4} A)", budget.total_rms, budget.total_rms * 1e10);
    for b in &budget.bands {
        eprintln!(
            "  {:>9.1}-{:<9.1} Hz  rms {:.4e} m  fraction {:.3}",
            b.f_lo, b.f_hi, b.rms, b.fraction
        );
    }
    emit(&report, args.budget_out.as_deref())
}
