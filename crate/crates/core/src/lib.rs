//! Computational toolkit for near-concentric optical cavities.
//!
//! The crate is organised around four subsystems:
//!
//! * [`optics`]: resonator spectral properties, Gaussian mode geometry of
//!   symmetric near-concentric cavities, the noise-limit factor and
//!   atom-cavity coupling figures.
//! * [`alignment`]: actuator command mixing, piezo expansion, frame-plane
//!   kinematics and transverse misalignment compensation.
//! * [`noise`]: error-signal ingestion, length calibration, averaged
//!   periodogram spectral densities, band-limited RMS budgets and
//!   spectral synthesis of test traces.
//! * [`lockloop`]: Pound-Drever-Hall discriminator, second-order mechanical
//!   plant, open-loop margins and a discrete-time lock simulation.
//!
//! All quantities are SI. Frequencies are in Hz unless a value is wrapped
//! in [`units::AngularFrequency`].
//!
//! Batch work (periodogram segments, frequency sweeps, trace batches) runs
//! on rayon when the `parallel` feature is enabled and falls back to plain
//! iterators otherwise; results are bit-identical either way.

pub mod alignment;
pub mod lockloop;
pub mod noise;
pub mod optics;
pub mod par;
pub mod solve;
pub mod units;

pub use par::Execution;
pub use units::{AngularFrequency, SPEED_OF_LIGHT};
