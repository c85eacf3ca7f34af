use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pauli, UnitVector3};
use crate::superpose::{superposed_unitary, SuperpositionConfig};

/// Two-time correlators on the grid `t1 = 0, t2 = t, t3 = 2t` and the
/// Leggett-Garg combination `K3 = C12 + C23 − C13`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelatorSet {
    pub c12: f64,
    pub c23: f64,
    pub c13: f64,
    pub k3: f64,
}

impl CorrelatorSet {
    pub fn new(c12: f64, c23: f64, c13: f64) -> Self {
        Self {
            c12,
            c23,
            c13,
            k3: c12 + c23 - c13,
        }
    }
}

/// `Cij = ½ tr[Q U(tj, ti) Q U†(tj, ti)]` for `Q = σ_q`.
pub fn correlator(
    cfg: &SuperpositionConfig,
    ti: f64,
    tj: f64,
    q_axis: &UnitVector3,
) -> Result<f64> {
    if tj < ti {
        return Err(Error::TimeOrder { ti, tj });
    }
    let u = superposed_unitary(cfg, tj - ti)?;
    let q = pauli(q_axis);
    let value = 0.5 * (&(&q * &u) * &(&q * &u.dagger())).trace().re;
    Ok(value.clamp(-1.0, 1.0))
}

/// Correlators and K3 for `Q = σz` at `t1 = 0, t2 = t, t3 = 2t`.
pub fn k3_at(cfg: &SuperpositionConfig, t: f64) -> Result<CorrelatorSet> {
    k3_at_with_observable(cfg, t, &UnitVector3::Z)
}

pub fn k3_at_with_observable(
    cfg: &SuperpositionConfig,
    t: f64,
    q_axis: &UnitVector3,
) -> Result<CorrelatorSet> {
    if t < 0.0 {
        return Err(Error::TimeOrder { ti: 0.0, tj: t });
    }
    let c12 = correlator(cfg, 0.0, t, q_axis)?;
    let c23 = correlator(cfg, t, 2.0 * t, q_axis)?;
    let c13 = correlator(cfg, 0.0, 2.0 * t, q_axis)?;
    debug_assert!((c12 - c23).abs() < 1e-10, "stationarity: C12 != C23");
    Ok(CorrelatorSet::new(c12, c23, c13))
}
