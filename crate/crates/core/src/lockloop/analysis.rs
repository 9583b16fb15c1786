use std::f64::consts::PI;

use super::transfer::{log_frequencies, OpenLoop, TransferFunction};
use super::LoopError;
use crate::solve::brent;

const GRID_POINTS: usize = 4000;

/// Margins of an open loop and the bandwidth limits reachable by scaling its
/// gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopAnalysis {
    /// Lowest frequency where `|L|` falls through one, Hz.
    pub crossover_frequency: f64,
    /// Degrees, in (−180, 180].
    pub phase_margin: f64,
    pub margin_target: f64,
    /// Highest crossover frequency that keeps at least `margin_target` of
    /// phase margin when the gain is rescaled, Hz. Zero when the target is
    /// unattainable at any gain.
    pub max_bandwidth_at_margin: f64,
    pub margin_achievable: bool,
    /// Closed-loop stability at the gain that puts the crossover at
    /// `max_bandwidth_at_margin`.
    pub stable_at_margin_bandwidth: bool,
    /// Highest crossover frequency reachable by gain scaling before the
    /// closed loop loses stability, Hz. `None` when no gain destabilises
    /// the loop.
    pub max_stable_bandwidth: Option<f64>,
    /// Closed-loop stability at the configured gain.
    pub stable: bool,
}

struct Grid {
    f: Vec<f64>,
}

impl Grid {
    fn for_loop(ol: &OpenLoop) -> Self {
        let f0 = ol.plant.resonance_frequency;
        Self {
            f: log_frequencies(f0 * 1e-5, f0 * 1e3, GRID_POINTS),
        }
    }

    fn lo(&self) -> f64 {
        self.f[0]
    }

    fn hi(&self) -> f64 {
        *self.f.last().unwrap()
    }

    /// First root of `g` where it changes from non-negative to negative.
    fn first_fall<G: Fn(f64) -> f64>(&self, g: G) -> Result<Option<f64>, LoopError> {
        let mut prev = g(self.f[0]);
        for w in self.f.windows(2) {
            let cur = g(w[1]);
            if prev >= 0.0 && cur < 0.0 {
                return Ok(Some(brent(&g, w[0], w[1], 1e-12, 0.0)?));
            }
            prev = cur;
        }
        Ok(None)
    }
}

fn crossover_on(ol: &OpenLoop, grid: &Grid) -> Result<f64, LoopError> {
    let log_mag = |f: f64| ol.response(f).norm().ln();
    if ol.controller.is_open() || log_mag(grid.lo()) < 0.0 {
        return Err(LoopError::NoCrossover {
            f_min: grid.lo(),
            f_max: grid.hi(),
        });
    }
    grid.first_fall(log_mag)?.ok_or(LoopError::NoCrossover {
        f_min: grid.lo(),
        f_max: grid.hi(),
    })
}

/// Frequencies where the open-loop phase passes through −180° (mod 360°).
fn phase_crossovers(ol: &OpenLoop, grid: &Grid) -> Result<Vec<f64>, LoopError> {
    let turns = |f: f64| (ol.phase(f) + PI) / (2.0 * PI);
    let mut out = Vec::new();
    let mut prev = turns(grid.f[0]);
    for w in grid.f.windows(2) {
        let cur = turns(w[1]);
        let (a, b) = (prev.floor(), cur.floor());
        if a != b {
            // the integer crossed lies between the two samples
            let k = a.max(b);
            out.push(brent(|f| turns(f) - k, w[0], w[1], 1e-12, 0.0)?);
        }
        prev = cur;
    }
    Ok(out)
}

/// Closed-loop stability by the Nyquist criterion for an open loop with no
/// right-half-plane poles: stable when `|L| < 1` at every frequency where
/// the phase passes through −180°. Conservative for conditionally stable
/// loops.
pub fn closed_loop_stable(ol: &OpenLoop) -> Result<bool, LoopError> {
    let grid = Grid::for_loop(ol);
    Ok(phase_crossovers(ol, &grid)?
        .into_iter()
        .all(|f| ol.response(f).norm() < 1.0))
}

fn wrap_degrees(x: f64) -> f64 {
    let mut y = x % 360.0;
    if y <= -180.0 {
        y += 360.0;
    } else if y > 180.0 {
        y -= 360.0;
    }
    y
}

pub fn loop_analysis(ol: &OpenLoop, margin_target: f64) -> Result<LoopAnalysis, LoopError> {
    if !(0.0..=180.0).contains(&margin_target) {
        return Err(LoopError::InvalidParameter {
            name: "margin_target",
            value: margin_target,
            reason: "must lie in [0, 180] degrees",
        });
    }
    let grid = Grid::for_loop(ol);
    let crossover_frequency = crossover_on(ol, &grid)?;
    let phase_margin = wrap_degrees(180.0 + ol.phase(crossover_frequency).to_degrees());

    let pcs = phase_crossovers(ol, &grid)?;
    let worst = pcs.iter().map(|&f| ol.response(f).norm()).fold(0.0, f64::max);
    let stable = worst < 1.0;
    let max_stable_bandwidth = if pcs.is_empty() {
        None
    } else {
        Some(crossover_on(&ol.with_gain_scale(1.0 / worst), &grid)?)
    };

    let excess = |f: f64| 180.0 + ol.phase(f).to_degrees() - margin_target;
    let (max_bandwidth_at_margin, margin_achievable) = if excess(grid.lo()) < 0.0 {
        (0.0, false)
    } else {
        (grid.first_fall(excess)?.unwrap_or(grid.hi()), true)
    };
    let stable_at_margin_bandwidth = margin_achievable && {
        let k = 1.0 / ol.response(max_bandwidth_at_margin).norm();
        pcs.iter().all(|&f| k * ol.response(f).norm() < 1.0)
    };

    Ok(LoopAnalysis {
        crossover_frequency,
        phase_margin,
        margin_target,
        max_bandwidth_at_margin,
        margin_achievable,
        stable_at_margin_bandwidth,
        max_stable_bandwidth,
        stable,
    })
}
