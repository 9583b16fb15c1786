use std::f64::consts::PI;

use super::cavity::CavityGeometry;
use super::{positive, OpticsError};
use crate::solve::brent;
use crate::units::{AngularFrequency, SPEED_OF_LIGHT};

/// An atomic transition addressed by the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomLine {
    wavelength: f64,
    half_linewidth: AngularFrequency,
}

impl AtomLine {
    pub fn new(wavelength: f64, half_linewidth: AngularFrequency) -> Result<Self, OpticsError> {
        positive("wavelength", wavelength)?;
        positive("half_linewidth", half_linewidth.rad_per_s())?;
        Ok(Self {
            wavelength,
            half_linewidth,
        })
    }

    /// ⁸⁷Rb D₂ line, λ = 780 nm, γ = 2π × 3.03 MHz.
    pub fn rubidium_d2() -> Self {
        Self {
            wavelength: 780e-9,
            half_linewidth: AngularFrequency::from_hz(3.03e6),
        }
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn half_linewidth(&self) -> AngularFrequency {
        self.half_linewidth
    }
}

/// Atom-cavity coupling figures at the mode waist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingReport {
    /// Standing-wave mode volume `(π/4) w₀² L`, m³.
    pub mode_volume: f64,
    pub coupling_g: AngularFrequency,
    pub kappa: AngularFrequency,
    pub cooperativity: f64,
}

/// Single-atom coupling for an atom at a field antinode at the waist of a
/// standing-wave mode, driven on a cycling transition:
/// `g = √(6 c λ² γ / (π³ w₀² L))`.
///
/// This is the only place the mode-volume convention enters.
pub fn standing_wave_coupling(
    waist: f64,
    length: f64,
    wavelength: f64,
    half_linewidth: AngularFrequency,
) -> AngularFrequency {
    let g2 = 6.0 * SPEED_OF_LIGHT * wavelength * wavelength * half_linewidth.rad_per_s()
        / (PI.powi(3) * waist * waist * length);
    AngularFrequency::from_rad_per_s(g2.sqrt())
}

/// `C = g² / (2κγ)`.
pub fn cooperativity(g: AngularFrequency, kappa: AngularFrequency, gamma: AngularFrequency) -> f64 {
    g.rad_per_s().powi(2) / (2.0 * kappa.rad_per_s() * gamma.rad_per_s())
}

impl CavityGeometry {
    pub fn coupling(&self, atom: &AtomLine) -> Result<CouplingReport, OpticsError> {
        let mode = self.mode_geometry(atom.wavelength)?;
        let length = self.length();
        let g = standing_wave_coupling(mode.waist, length, atom.wavelength, atom.half_linewidth);
        let kappa = self.spectral_profile().half_linewidth_kappa;
        Ok(CouplingReport {
            mode_volume: PI / 4.0 * mode.waist * mode.waist * length,
            coupling_g: g,
            kappa,
            cooperativity: cooperativity(g, kappa, atom.half_linewidth),
        })
    }
}

/// What the cavity design should achieve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesignTarget {
    Coupling(AngularFrequency),
    Waist(f64),
}

fn waist_at(radius: f64, d: f64, wavelength: f64) -> f64 {
    let z_r = ((2.0 * radius - d) * d).sqrt() / 2.0;
    (wavelength * z_r / PI).sqrt()
}

fn coupling_at(radius: f64, d: f64, atom: &AtomLine) -> f64 {
    let w0 = waist_at(radius, d, atom.wavelength);
    standing_wave_coupling(w0, 2.0 * radius - d, atom.wavelength, atom.half_linewidth).rad_per_s()
}

/// Critical distance of a symmetric cavity that meets `target`.
///
/// The waist grows monotonically over `d ∈ (0, R]`. The coupling falls
/// monotonically only on `(0, R/2]` (beyond that the shrinking length wins
/// over the growing waist), so coupling targets are solved on that branch.
pub fn solve_critical_distance(
    target: DesignTarget,
    radius: f64,
    atom: &AtomLine,
) -> Result<f64, OpticsError> {
    positive("radius", radius)?;
    let d_min = radius * 1e-14;
    match target {
        DesignTarget::Waist(w) => {
            positive("target waist", w)?;
            let (lo, hi) = (waist_at(radius, d_min, atom.wavelength), waist_at(radius, radius, atom.wavelength));
            if !(w >= lo && w <= hi) {
                return Err(OpticsError::NoSolution { target: w, min: lo, max: hi });
            }
            if w == hi {
                return Ok(radius);
            }
            Ok(brent(
                |d| (waist_at(radius, d, atom.wavelength) / w).ln(),
                d_min,
                radius,
                1e-15,
                0.0,
            )?)
        }
        DesignTarget::Coupling(g) => {
            let g = positive("target coupling", g.rad_per_s())?;
            let d_max = radius / 2.0;
            let (lo, hi) = (coupling_at(radius, d_max, atom), coupling_at(radius, d_min, atom));
            if !(g >= lo && g <= hi) {
                return Err(OpticsError::NoSolution { target: g, min: lo, max: hi });
            }
            Ok(brent(|d| (coupling_at(radius, d, atom) / g).ln(), d_min, d_max, 1e-15, 0.0)?)
        }
    }
}
