//! Dephasing noise: the Bloch equation driven by the speed of evolution, the
//! master equation on ancilla ⊗ system, noisy correlators and lifetimes.

mod bloch;
mod lifetime;
mod lindblad;
pub mod ode;

use serde::Serialize;

use crate::error::{Error, Result};

pub use bloch::{bloch_rhs, integrate_bloch, k3_bloch, BlochTrajectory, BlochVector};
pub use lifetime::{
    gain_curve, lifetime, GainPoint, LifetimeResult, NoiseModel, BISECTION_TOL, HORIZON, SCAN_STEP,
};
pub use lindblad::{
    evolve_lindblad, evolve_lindblad_exact, joint_hamiltonian, k3_lindblad, lindblad_rhs,
    noisy_correlator, LindbladGenerator,
};
pub use ode::Tolerance;

/// ODE solver choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Solver {
    /// Adaptive RK45 for the Bloch equation, RK4 with step
    /// `min(0.01/ω, 0.01/γ)` for the master equation.
    Auto,
    Rk4Fixed { step: f64 },
    Rk45Adaptive { tolerance: Tolerance },
}

/// How the two σz branches of a noisy correlator are normalized after
/// post-selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchNormalization {
    /// Each branch divided by its own success probability.
    PerBranch,
    /// Both branches divided by the summed success probability.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseConfig {
    /// Dephasing rate in 1/s.
    pub gamma: f64,
    pub solver: Solver,
    pub normalization: BranchNormalization,
}

impl NoiseConfig {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidConfig(format!("gamma = {gamma} must be >= 0")));
        }
        Ok(Self {
            gamma,
            solver: Solver::Auto,
            normalization: BranchNormalization::PerBranch,
        })
    }

    pub fn with_solver(mut self, solver: Solver) -> Result<Self> {
        let ok = match solver {
            Solver::Auto => true,
            Solver::Rk4Fixed { step } => step > 0.0 && step.is_finite(),
            Solver::Rk45Adaptive { tolerance } => tolerance.abs > 0.0 && tolerance.rel >= 0.0,
        };
        if !ok {
            return Err(Error::InvalidConfig(format!("invalid solver settings {solver:?}")));
        }
        self.solver = solver;
        Ok(self)
    }

    pub fn with_normalization(mut self, normalization: BranchNormalization) -> Self {
        self.normalization = normalization;
        self
    }
}
