//! Shared project configuration, read from JSON.
//!
//! Every section and field is optional; missing values take the defaults of
//! the reference cavity (R = 5.5 mm, 99.5% mirrors, d = 7.8 µm, Rb D₂).

use std::path::Path;

use nckit_core::alignment::{FrameGeometry, MixerConfig};
use nckit_core::lockloop::{ControllerConfig, Discriminator, PDHConfig, PlantModel};
use nckit_core::noise::{WelchConfig, Window};
use nckit_core::optics::{AtomLine, CavityGeometry, MirrorSpec};
use nckit_core::AngularFrequency;
use serde::Deserialize;

use crate::error::{config as config_error, CliError};

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ProjectConfig {
    pub cavity: CavitySection,
    pub atom: AtomSection,
    pub mixer: MixerSection,
    pub frame: FrameSection,
    pub plant: PlantSection,
    pub pdh: PdhSection,
    pub controller: ControllerSection,
    pub noise: NoiseSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CavitySection {
    pub radius_of_curvature_m: f64,
    pub reflectivity: f64,
    pub critical_distance_m: f64,
    /// Per-mirror intensity loss; transmission is `1 − R − loss`.
    pub loss: f64,
}

impl Default for CavitySection {
    fn default() -> Self {
        Self {
            radius_of_curvature_m: 5.5e-3,
            reflectivity: 0.995,
            critical_distance_m: 7.8e-6,
            loss: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AtomSection {
    pub wavelength_m: f64,
    /// γ/2π.
    pub half_linewidth_hz: f64,
}

impl Default for AtomSection {
    fn default() -> Self {
        Self {
            wavelength_m: 780e-9,
            half_linewidth_hz: 3.03e6,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MixerSection {
    /// Defaults to the inverse of `expansion_m_per_v`.
    pub gain_v_per_m: Option<f64>,
    pub voltage_limit_v: f64,
    pub expansion_m_per_v: f64,
    pub bias_v: f64,
}

impl Default for MixerSection {
    fn default() -> Self {
        let m = MixerConfig::default();
        Self {
            gain_v_per_m: None,
            voltage_limit_v: m.voltage_limit,
            expansion_m_per_v: m.expansion_per_volt,
            bias_v: m.bias_voltage,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrameSection {
    pub circumradius_m: f64,
    /// Explicit A, B, C positions; overrides `circumradius_m`.
    pub actuator_positions_m: Option<[[f64; 2]; 3]>,
}

impl Default for FrameSection {
    fn default() -> Self {
        Self {
            circumradius_m: 8e-3,
            actuator_positions_m: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantSection {
    pub dc_gain_m_per_v: f64,
    pub resonance_hz: f64,
    pub quality_factor: f64,
    pub delay_s: f64,
}

impl Default for PlantSection {
    fn default() -> Self {
        let p = PlantModel::default();
        Self {
            dc_gain_m_per_v: p.dc_gain,
            resonance_hz: p.resonance_frequency,
            quality_factor: p.quality_factor,
            delay_s: p.delay,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PdhSection {
    pub modulation_hz: f64,
    pub modulation_depth: f64,
    pub error_scale_v: f64,
}

impl Default for PdhSection {
    fn default() -> Self {
        let p = PDHConfig::default();
        Self {
            modulation_hz: p.modulation_frequency,
            modulation_depth: p.modulation_depth,
            error_scale_v: p.error_scale,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DiscriminatorKind {
    /// Discriminator × plant DC gain equals one.
    #[default]
    Normalized,
    /// Slope of the configured PDH signal.
    Pdh,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControllerSection {
    pub integral_gain_per_s: f64,
    pub proportional_gain: f64,
    /// When absent the controller runs at the trace sample rate.
    pub sample_rate_hz: Option<f64>,
    pub discriminator: DiscriminatorKind,
    pub margin_deg: f64,
}

impl Default for ControllerSection {
    fn default() -> Self {
        let c = ControllerConfig::default();
        Self {
            integral_gain_per_s: c.integral_gain,
            proportional_gain: c.proportional_gain,
            sample_rate_hz: None,
            discriminator: DiscriminatorKind::Normalized,
            margin_deg: 60.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    #[default]
    Hann,
    Rectangular,
    Tukey,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSection {
    pub segment_length: usize,
    pub overlap: f64,
    pub window: WindowKind,
    /// Taper fraction for the Tukey window.
    pub taper: f64,
    pub bands_hz: Vec<[f64; 2]>,
}

impl Default for NoiseSection {
    fn default() -> Self {
        let w = WelchConfig::default();
        Self {
            segment_length: w.segment_length,
            overlap: w.overlap,
            window: WindowKind::Hann,
            taper: 0.5,
            bands_hz: vec![[200.0, 2500.0], [2550.0, 2950.0]],
        }
    }
}

/// Library objects built from a validated configuration.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub cavity: CavityGeometry,
    pub atom: AtomLine,
    pub mixer: MixerConfig,
    pub frame: FrameGeometry,
    pub plant: PlantModel,
    pub pdh: PDHConfig,
    pub welch: WelchConfig,
}

impl ProjectConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config_error(&path, e.into_inner())
        })
    }

    /// Builds and validates every section, reporting the first offending
    /// field by its path.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let c = &self.cavity;
        let mirror = MirrorSpec::new(c.radius_of_curvature_m, c.reflectivity)
            .map_err(|e| config_error("cavity.reflectivity", e))?;
        if !(c.loss >= 0.0 && c.loss < 1.0 - c.reflectivity) {
            return Err(config_error("cavity.loss", format!("{} must lie in [0, 1 - reflectivity)", c.loss)));
        }
        let mirror = mirror
            .with_transmission(1.0 - c.reflectivity - c.loss)
            .map_err(|e| config_error("cavity.loss", e))?;
        if !(c.critical_distance_m > 0.0 && c.critical_distance_m <= 2.0 * c.radius_of_curvature_m) {
            return Err(config_error(
                "cavity.critical_distance_m",
                format!("{} must lie in (0, 2R]", c.critical_distance_m),
            ));
        }
        let cavity = CavityGeometry::new(mirror, mirror, 2.0 * c.radius_of_curvature_m - c.critical_distance_m)
            .map_err(|e| config_error("cavity.critical_distance_m", e))?;

        let atom = AtomLine::new(self.atom.wavelength_m, AngularFrequency::from_hz(self.atom.half_linewidth_hz))
            .map_err(|e| config_error("atom", e))?;

        let m = &self.mixer;
        let mixer = MixerConfig {
            gain: m.gain_v_per_m.unwrap_or(1.0 / m.expansion_m_per_v),
            voltage_limit: m.voltage_limit_v,
            expansion_per_volt: m.expansion_m_per_v,
            bias_voltage: m.bias_v,
        };
        mixer.validate().map_err(|e| config_error("mixer", e))?;

        let frame = match self.frame.actuator_positions_m {
            Some(p) => FrameGeometry::new(p).map_err(|e| config_error("frame.actuator_positions_m", e))?,
            None => FrameGeometry::equilateral(self.frame.circumradius_m)
                .map_err(|e| config_error("frame.circumradius_m", e))?,
        };

        let p = &self.plant;
        let plant = PlantModel::new(p.dc_gain_m_per_v, p.resonance_hz, p.quality_factor, p.delay_s)
            .map_err(|e| config_error("plant", e))?;

        let mut pdh = PDHConfig::new(self.pdh.modulation_hz, self.pdh.modulation_depth, cavity)
            .map_err(|e| config_error("pdh", e))?;
        pdh.error_scale = self.pdh.error_scale_v;
        pdh.validate().map_err(|e| config_error("pdh.error_scale_v", e))?;

        let ctl = &self.controller;
        for (name, v) in [
            ("controller.integral_gain_per_s", ctl.integral_gain_per_s),
            ("controller.proportional_gain", ctl.proportional_gain),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(config_error(name, format!("{v} must be finite and non-negative")));
            }
        }
        if let Some(fs) = ctl.sample_rate_hz {
            if !(fs.is_finite() && fs > 0.0) {
                return Err(config_error("controller.sample_rate_hz", format!("{fs} must be positive")));
            }
        }
        if !(0.0..=180.0).contains(&ctl.margin_deg) {
            return Err(config_error("controller.margin_deg", format!("{} must lie in [0, 180]", ctl.margin_deg)));
        }

        let n = &self.noise;
        if n.segment_length < 2 {
            return Err(config_error("noise.segment_length", "must be at least 2"));
        }
        if !(0.0..1.0).contains(&n.overlap) {
            return Err(config_error("noise.overlap", format!("{} must lie in [0, 1)", n.overlap)));
        }
        if !(0.0..=1.0).contains(&n.taper) {
            return Err(config_error("noise.taper", format!("{} must lie in [0, 1]", n.taper)));
        }
        for (i, [lo, hi]) in n.bands_hz.iter().enumerate() {
            if !(*lo >= 0.0 && lo <= hi) {
                return Err(config_error(&format!("noise.bands_hz[{i}]"), format!("[{lo}, {hi}] is not a band")));
            }
        }
        let window = match n.window {
            WindowKind::Hann => Window::Hann,
            WindowKind::Rectangular => Window::Rectangular,
            WindowKind::Tukey => Window::Tukey(n.taper),
        };

        Ok(Resolved {
            cavity,
            atom,
            mixer,
            frame,
            plant,
            pdh,
            welch: WelchConfig {
                segment_length: n.segment_length,
                overlap: n.overlap,
                window,
            },
        })
    }

    pub fn discriminator(&self, r: &Resolved) -> Result<Discriminator, CliError> {
        match self.controller.discriminator {
            DiscriminatorKind::Normalized => Ok(Discriminator::normalized(&r.plant)),
            DiscriminatorKind::Pdh => Discriminator::from_pdh(&r.pdh, r.atom.wavelength())
                .map_err(|e| config_error("controller.discriminator", e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let r = ProjectConfig::default().resolve().unwrap();
        assert!((r.cavity.length() - (11e-3 - 7.8e-6)).abs() < 1e-15);
        assert_eq!(r.mixer.gain, 1.0 / 1.5e-7);
    }

    #[test]
    fn unknown_field_names_path() {
        let err = ProjectConfig::parse(r#"{"cavity": {"reflectivty": 0.9}}"#).unwrap_err();
        assert!(err.to_string().contains("cavity"), "{err}");
    }

    #[test]
    fn type_error_names_path() {
        let err = ProjectConfig::parse(r#"{"plant": {"quality_factor": "high"}}"#).unwrap_err();
        assert!(err.to_string().contains("plant.quality_factor"), "{err}");
    }

    #[test]
    fn semantic_error_names_path() {
        let cfg = ProjectConfig::parse(r#"{"cavity": {"reflectivity": 1.5}}"#).unwrap();
        let err = cfg.resolve().unwrap_err();
        assert!(err.to_string().contains("cavity.reflectivity"), "{err}");
        let cfg = ProjectConfig::parse(r#"{"noise": {"bands_hz": [[10, 5]]}}"#).unwrap();
        assert!(cfg.resolve().unwrap_err().to_string().contains("noise.bands_hz[0]"));
    }
}
