use clap::Args;
use nckit_core::optics::{
    length_noise_to_frequency, noise_limit_factor, solve_critical_distance, transverse_mode_offset, DesignTarget,
};
use nckit_core::AngularFrequency;
use serde_json::Value;

use crate::config::ProjectConfig;
use crate::error::{config, CliError};
use crate::quantity;
use crate::report::{emit, Report};

#[derive(Debug, Args)]
pub struct DesignArgs {
    /// Critical distance d = 2R − L, e.g. `7.8um`.
    #[arg(long, value_parser = quantity::length, conflicts_with = "target_g")]
    pub target_d: Option<f64>,
    /// Coupling g/2π to reach, e.g. `17.3MHz` or `2pi*17.3MHz`.
    #[arg(long, value_parser = quantity::angular)]
    pub target_g: Option<AngularFrequency>,
    /// RMS length fluctuation for the noise-limit factor.
    #[arg(long, value_parser = quantity::length, default_value = "0.36A")]
    pub delta_l: f64,
}

pub fn run(cfg: &ProjectConfig, args: &DesignArgs) -> Result<(), CliError> {
    let mut cfg = cfg.clone();
    let radius = cfg.cavity.radius_of_curvature_m;
    let base = cfg.resolve()?;

    let mut target = Value::Null;
    let mut convention = Value::Null;
    if let Some(d) = args.target_d {
        cfg.cavity.critical_distance_m = d;
        target = Report::new().value("kind", "critical_distance").num("value_m", d).into_value();
    } else if let Some(g) = args.target_g {
        let d = solve_critical_distance(DesignTarget::Coupling(g), radius, &base.atom)
            .map_err(|e| config("--target-g", e))?;
        cfg.cavity.critical_distance_m = d;
        target = Report::new()
            .value("kind", "coupling")
            .num("g_over_2pi_hz", g.hz())
            .num("solved_critical_distance_m", d)
            .into_value();
        // A position-averaged coupling halves g², so the same nominal g needs
        // √2 more under the antinode convention used here.
        let alt = solve_critical_distance(
            DesignTarget::Coupling(AngularFrequency::from_rad_per_s(g.rad_per_s() * 2f64.sqrt())),
            radius,
            &base.atom,
        )
        .ok();
        convention = Report::new()
            .value("mode_volume", "standing wave (pi/4) w0^2 L, atom at antinode on a cycling transition")
            .value("alternate", "position-averaged coupling (g^2 halved)")
            .opt("alternate_critical_distance_m", alt)
            .opt("relative_shift", alt.map(|a| a / d - 1.0))
            .value(
                "note",
                "solved distance depends on the mode-volume convention; compare with the alternate before committing to hardware",
            )
            .into_value();
        eprintln!(
            "warning: the solved critical distance is convention-sensitive ({})",
            alt.map_or("alternate convention unattainable".to_string(), |a| format!(
                "{:.3} um under the position-averaged convention vs {:.3} um",
                a * 1e6,
                d * 1e6
            ))
        );
    }

    let r = cfg.resolve()?;
    let cavity = &r.cavity;
    let atom = &r.atom;
    let profile = cavity.spectral_profile();
    let stable = cavity.is_stable();
    let mode = cavity.mode_geometry(atom.wavelength()).map_err(|e| config("cavity", e))?;
    let offset = transverse_mode_offset(cavity).map_err(|e| config("cavity", e))?;
    let coupling = cavity.coupling(atom).map_err(|e| config("cavity", e))?;
    let xi = noise_limit_factor(args.delta_l, atom.wavelength(), profile.finesse);

    let report = Report::new()
        .num("radius_of_curvature_m", radius)
        .num("critical_distance_m", cavity.critical_distance())
        .num("cavity_length_m", cavity.length())
        .value("stable", stable)
        .num("stability_product", mode.stability_product)
        .num("free_spectral_range_hz", profile.free_spectral_range)
        .num("finesse", profile.finesse)
        .num("full_linewidth_hz", profile.full_linewidth)
        .num("kappa_over_2pi_hz", profile.half_linewidth_kappa.hz())
        .num("quality_factor", profile.quality_factor(atom.wavelength()))
        .num("waist_m", mode.waist)
        .num("waist_at_mirror_m", mode.waist_at_mirror)
        .num("rayleigh_range_m", mode.rayleigh_range)
        .num("transverse_mode_offset_hz", offset)
        .num("delta_l_rms_m", args.delta_l)
        .num("xi", xi)
        .num("delta_nu_hz", length_noise_to_frequency(args.delta_l, cavity, atom.wavelength()))
        .num("mode_volume_m3", coupling.mode_volume)
        .num("g_over_2pi_hz", coupling.coupling_g.hz())
        .num("gamma_over_2pi_hz", atom.half_linewidth().hz())
        .num("cooperativity", coupling.cooperativity)
        .value("target", target)
        .value("convention", convention)
        .into_value();
    emit(&report, None)
}
