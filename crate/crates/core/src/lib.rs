//! Simulation of a two-level system evolving under a superposition of two SU(2)
//! unitaries.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: 2/4/8-dimensional complex matrices, Pauli algebra, rotations.
//! - [`superpose`]: the normalized superposed unitary and its Bloch kinematics
//!   (effective axis, rotation angle `f(t)`, speed of evolution `g(t)`).
//! - [`lgi`]: two-time correlators, the Leggett-Garg combination K3 and sweeps.
//! - [`ancilla`]: the ancilla-assisted circuit, the three-qubit interferometric
//!   readout and pulse-sequence verification.
//! - [`noise`]: dephasing through Bloch equations and a Lindblad master
//!   equation, noisy correlators, lifetimes and robustness gains.
//!
//! ```
//! use lgsim::lgi::{k3_max, SweepAxis};
//! use lgsim::superpose::SuperpositionConfig;
//!
//! let cfg = SuperpositionConfig::planar(std::f64::consts::FRAC_PI_4, 160f64.to_radians(), 1.0)?;
//! let best = k3_max(&cfg, &SweepAxis::full_cycle(2000)?)?;
//! assert!(best.k3max > 1.5); // beyond the temporal Tsirelson bound
//! # Ok::<(), lgsim::Error>(())
//! ```

pub mod ancilla;
mod error;
pub mod lgi;
pub mod linalg;
pub mod noise;
pub mod superpose;

pub use error::{Error, Result};
