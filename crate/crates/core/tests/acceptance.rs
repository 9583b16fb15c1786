//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use nckit_core::alignment::{frame_pose, mix_commands, unmix_voltages, ActuatorCommand, FrameGeometry, MixerConfig};
use nckit_core::lockloop::{
    cavity_reflection, cavity_transmission, loop_analysis, pdh_error, simulate_lock, ControllerConfig,
    Discriminator, OpenLoop, PDHConfig, PlantModel, SimulationOptions,
};
use nckit_core::noise::{
    band_rms, estimate_psd, synthesize, ReferenceSpectrum, SpectralModel, Unit, WelchConfig,
};
use nckit_core::optics::{
    cooperativity, critical_distance_from_offset, finesse_from_reflectivities, length_noise_to_frequency,
    noise_limit_factor, noise_limit_length, transverse_mode_offset, CavityGeometry,
};
use nckit_core::units::ANGSTROM;
use nckit_core::{AngularFrequency, SPEED_OF_LIGHT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const LAMBDA: f64 = 780e-9;
const RADIUS: f64 = 5.5e-3;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn finesse() -> Outcome {
    let f = finesse_from_reflectivities(0.995, 0.995).map_err(|e| e.to_string())?;
    check((f - 626.6).abs() <= 0.5, format!("F = {f:.4}"))
}

fn linewidth() -> Outcome {
    let g = CavityGeometry::symmetric(RADIUS, 0.995, 11e-3).map_err(|e| e.to_string())?;
    let kappa = g.spectral_profile().half_linewidth_kappa.hz() / 1e6;
    check((kappa - 10.87).abs() <= 0.05, format!("kappa/2pi = {kappa:.4} MHz"))
}

fn noise_limit_round_trip() -> Outcome {
    let f = finesse_from_reflectivities(0.995, 0.995).map_err(|e| e.to_string())?;
    let dl = noise_limit_length(0.15, LAMBDA, f) / ANGSTROM;
    let xi = noise_limit_factor(0.36 * ANGSTROM, LAMBDA, f);
    let back = noise_limit_factor(dl * ANGSTROM, LAMBDA, f);
    check(
        (dl - 0.93).abs() < 0.005 && (0.05..=0.06).contains(&xi) && (back - 0.15).abs() < 1e-12,
        format!("xi=0.15 -> dL = {dl:.4} A; dL=0.36 A -> xi = {xi:.4} (quoted as 0.05)"),
    )
}

fn frequency_mapping() -> Outcome {
    let g = CavityGeometry::symmetric(RADIUS, 0.995, 11e-3).map_err(|e| e.to_string())?;
    let dnu = length_noise_to_frequency(0.36 * ANGSTROM, &g, LAMBDA) / 1e6;
    check(
        (dnu - 1.26).abs() < 0.005 && (1.20..=1.36).contains(&dnu),
        format!("dnu = {dnu:.4} MHz"),
    )
}

fn cooperativity_check() -> Outcome {
    let c = cooperativity(
        AngularFrequency::from_hz(17.3e6),
        AngularFrequency::from_hz(10.9e6),
        AngularFrequency::from_hz(3.03e6),
    );
    check((c - 4.53).abs() <= 0.05, format!("C = {c:.4}"))
}

fn mixing() -> Outcome {
    let cfg = MixerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let cmd = ActuatorCommand::new(
            rng.random_range(-5e-6..5e-6),
            rng.random_range(-5e-6..5e-6),
            rng.random_range(-5e-6..5e-6),
        );
        let back = unmix_voltages(&mix_commands(&cmd, &cfg), &cfg);
        let scale = cmd.delta_length.abs().max(cmd.tip.abs()).max(cmd.tilt.abs());
        let err = (back.delta_length - cmd.delta_length)
            .abs()
            .max((back.tip - cmd.tip).abs())
            .max((back.tilt - cmd.tilt).abs());
        worst = worst.max(err / scale);
    }
    let v = mix_commands(&ActuatorCommand::new(1e-6, 0.0, 0.0), &cfg);
    let equal = v.v_a == v.v_b && v.v_b == v.v_c;
    let expansions = v.channels().map(|x| x * cfg.expansion_per_volt);
    let pose = frame_pose(expansions, &FrameGeometry::default());
    check(
        worst < 1e-12 && equal && pose.tip.abs() < 1e-12 && pose.tilt.abs() < 1e-12,
        format!(
            "round trip max rel err {worst:.1e}; pure dL -> ({:.3}, {:.3}, {:.3}) V, tip {:.1e}, tilt {:.1e}",
            v.v_a, v.v_b, v.v_c, pose.tip, pose.tilt
        ),
    )
}

fn mode_spacing() -> Outcome {
    let mut worst: f64 = 0.0;
    let n = 400;
    for i in 0..=n {
        let d = 0.1e-6 * (5000f64).powf(i as f64 / n as f64);
        let g = CavityGeometry::near_concentric(RADIUS, 0.995, d).map_err(|e| e.to_string())?;
        let off = transverse_mode_offset(&g).map_err(|e| e.to_string())?;
        let back = critical_distance_from_offset(off, RADIUS, 2.0 * RADIUS).map_err(|e| e.to_string())?;
        worst = worst.max(((back - d) / d).abs());
    }
    let g = CavityGeometry::near_concentric(RADIUS, 0.995, 7.8e-6).map_err(|e| e.to_string())?;
    let off = transverse_mode_offset(&g).map_err(|e| e.to_string())?;
    // small-d expansion: FSR·√(2d/R)/π with L ≈ 2R
    let approx = SPEED_OF_LIGHT / (4.0 * RADIUS) * (2.0 * 7.8e-6 / RADIUS).sqrt() / PI;
    let rel = ((off - approx) / approx).abs();
    check(
        worst < 1e-9 && rel < 0.02 && (off / 1e6 - 231.0).abs() < 1.0,
        format!("inversion max rel err {worst:.1e}; d=7.8 um -> {:.2} MHz (expansion {:.2} MHz)", off / 1e6, approx / 1e6),
    )
}

fn reference_noise() -> Outcome {
    let reference = ReferenceSpectrum::default();
    let fs = 250e3;
    let trace = synthesize(&reference.model(), fs, 0.5, 8, Unit::Meter).map_err(|e| e.to_string())?;
    let psd = estimate_psd(&trace, &WelchConfig::with_segment_length(16384)).map_err(|e| e.to_string())?;
    let total = band_rms(&psd, 0.0, psd.max_frequency()).map_err(|e| e.to_string())?;
    let plateau = band_rms(&psd, 200.0, 2500.0).map_err(|e| e.to_string())?;
    let (lo, hi) = reference.resonance_band();
    let resonance = band_rms(&psd, lo, hi).map_err(|e| e.to_string())?;
    let rms = total.rms / ANGSTROM;
    check(
        (rms - 0.36).abs() <= 0.05 * 0.36 && plateau.fraction >= 0.70 && (resonance.fraction - 0.01).abs() <= 0.003,
        format!(
            "total {rms:.4} A; 200-2500 Hz fraction {:.3}; {lo:.0}-{hi:.0} Hz fraction {:.4}",
            plateau.fraction, resonance.fraction
        ),
    )
}

fn parseval() -> Outcome {
    let fs = 100e3;
    let n = 1 << 18;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        let f_lo = rng.random_range(10.0..10e3);
        let f_hi = rng.random_range(f_lo + 5e3..45e3);
        let model = SpectralModel::flat(f_lo, f_hi, rng.random_range(0.1..10.0));
        let trace = synthesize(&model, fs, n as f64 / fs, seed, Unit::Meter).map_err(|e| e.to_string())?;
        let psd = estimate_psd(&trace, &WelchConfig::default()).map_err(|e| e.to_string())?;
        worst = worst.max(((trace.variance() - psd.total_variance()) / trace.variance()).abs());
    }
    check(worst < 0.01, format!("max |var - int PSD|/var = {:.3}% over 100 traces", 100.0 * worst))
}

fn pdh() -> Outcome {
    let cfg = PDHConfig::default();
    let lw = cfg.cavity.spectral_profile().full_linewidth;
    let sweep: Vec<f64> = (1..=4000).map(|i| i as f64 * lw / 400.0).collect();
    let peak = sweep.iter().map(|&d| pdh_error(d, &cfg).abs()).fold(0.0, f64::max);
    let asym = sweep
        .iter()
        .map(|&d| (pdh_error(d, &cfg) + pdh_error(-d, &cfg)).abs())
        .fold(0.0, f64::max);
    let e0 = pdh_error(0.0, &cfg).abs();
    let fsr = cfg.cavity.free_spectral_range();
    let energy = (0..2000)
        .map(|i| {
            let d = (i as f64 / 2000.0 - 0.5) * fsr;
            (cavity_reflection(d, &cfg.cavity).norm_sqr() + cavity_transmission(d, &cfg.cavity).norm_sqr() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    check(
        e0 <= 1e-12 * peak && asym <= 1e-12 * peak && energy <= 1e-12,
        format!("|e(0)|/peak {:.1e}; antisymmetry {:.1e}; energy {:.1e}", e0 / peak, asym / peak, energy),
    )
}

fn default_loop(ki: f64, fs: f64) -> Result<OpenLoop, String> {
    let plant = PlantModel::default();
    let c = ControllerConfig::integral(ki, fs).map_err(|e| e.to_string())?;
    OpenLoop::new(c, plant, Discriminator::normalized(&plant)).map_err(|e| e.to_string())
}

fn control_bandwidth() -> Outcome {
    let a = loop_analysis(&default_loop(100.0, 250e3)?, 60.0).map_err(|e| e.to_string())?;
    check(
        (2200.0..=2800.0).contains(&a.max_bandwidth_at_margin),
        format!(
            "max bandwidth at 60 deg = {:.0} Hz (closed loop stable there: {}; stability limit {:.0} Hz)",
            a.max_bandwidth_at_margin,
            a.stable_at_margin_bandwidth,
            a.max_stable_bandwidth.unwrap_or(f64::INFINITY)
        ),
    )
}

fn closed_loop() -> Outcome {
    let fs = 250e3;
    let model = SpectralModel::flat(1.0, 20e3, 1e-24);
    let input = synthesize(&model, fs, 4.0, 12, Unit::Meter).map_err(|e| e.to_string())?;

    let open = simulate_lock(&input, &default_loop(0.0, fs)?, &SimulationOptions::default()).map_err(|e| e.to_string())?;
    let identical = open.residual.samples() == input.samples();

    let ol = default_loop(2.0 * PI * 200.0, fs)?;
    let sim = simulate_lock(&input, &ol, &SimulationOptions::default()).map_err(|e| e.to_string())?;
    let psd_in = estimate_psd(&input, &WelchConfig::default()).map_err(|e| e.to_string())?;
    let psd_out = &sim.psd;
    let mut acc = 0.0;
    let mut count = 0;
    for (i, &f) in psd_in.frequencies().iter().enumerate() {
        if i < 8 || f > 19e3 {
            continue;
        }
        let predicted = ol.sensitivity(f).norm_sqr() * psd_in.density()[i];
        let rel = psd_out.density()[i] / predicted - 1.0;
        acc += rel * rel;
        count += 1;
    }
    let rms = (acc / count as f64).sqrt();
    check(
        identical && rms < 0.10,
        format!("zero gain bit-exact: {identical}; residual PSD vs |S|^2 input: {:.2}% RMS over {count} bins", 100.0 * rms),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("finesse", finesse),
        ("linewidth", linewidth),
        ("noise-limit round trip", noise_limit_round_trip),
        ("length to frequency", frequency_mapping),
        ("cooperativity", cooperativity_check),
        ("actuator mixing", mixing),
        ("mode-spacing inversion", mode_spacing),
        ("reference noise spectrum", reference_noise),
        ("parseval", parseval),
        ("pdh symmetry and energy", pdh),
        ("control bandwidth", control_bandwidth),
        ("closed-loop consistency", closed_loop),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
