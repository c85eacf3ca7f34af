use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis is not a unit vector (norm = {norm})")]
    InvalidAxis { norm: f64 },

    #[error("unsupported matrix dimension {0} (expected 2, 4 or 8)")]
    DimError(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("degenerate superposition: N^2 = {0:e}")]
    DegenerateSuperposition(f64),

    #[error("closed-form kinematics require both rotation axes in the xy-plane")]
    UnsupportedGeometry,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("time ordering violated: tj = {tj} < ti = {ti}")]
    TimeOrder { ti: f64, tj: f64 },

    #[error("post-selection probability {0:e} is below 1e-12")]
    PostSelectionStarved(f64),

    #[error("ODE solver diverged at t = {t}: {reason}")]
    SolverDiverged { t: f64, reason: String },

    #[error("K3 never fell below 1 before t_max = {t_max}")]
    NoCrossing { t_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
