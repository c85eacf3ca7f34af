use rayon::prelude::*;
use serde::Serialize;

use super::bloch::BlochStepper;
use super::lindblad::{branch_states, combine_branches, propagate, LindbladGenerator};
use super::NoiseConfig;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::superpose::SuperpositionConfig;

/// Dynamics used to evaluate K3 under noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseModel {
    Bloch,
    Lindblad,
}

/// Scan step in units of `1/ω`.
pub const SCAN_STEP: f64 = 1e-2;
/// Relative width of the final crossing bracket.
pub const BISECTION_TOL: f64 = 1e-6;
/// Search horizon in units of `1/γ`.
pub const HORIZON: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LifetimeResult {
    pub tau_alpha: f64,
    pub tau_0: f64,
    pub gain: f64,
    /// Bracket around `tau_alpha` with `K3 ≥ 1` at the left end and `K3 < 1`
    /// at the right end.
    pub crossing_bracket: (f64, f64),
    pub model: NoiseModel,
    pub scan_step: f64,
    pub t_max: f64,
}

/// Incremental K3 evaluation. Calls must be close to increasing in `t`;
/// probes back into the last scanned interval are cheap.
trait K3Trace {
    fn k3(&mut self, t: f64) -> Result<f64>;
}

impl K3Trace for BlochStepper {
    fn k3(&mut self, t: f64) -> Result<f64> {
        BlochStepper::k3(self, t)
    }
}

#[derive(Clone)]
struct Checkpoint {
    t: f64,
    at_t: [ComplexMatrix; 2],
    at_2t: [ComplexMatrix; 2],
}

struct LindbladTrace {
    cfg: SuperpositionConfig,
    noise: NoiseConfig,
    gen: LindbladGenerator,
    origin: Checkpoint,
    prev: Checkpoint,
    cur: Checkpoint,
}

impl LindbladTrace {
    fn new(cfg: &SuperpositionConfig, noise: &NoiseConfig) -> Result<Self> {
        let start = branch_states(cfg.alpha())?;
        let origin = Checkpoint {
            t: 0.0,
            at_t: start.clone(),
            at_2t: start,
        };
        Ok(Self {
            cfg: *cfg,
            noise: *noise,
            gen: LindbladGenerator::new(cfg, noise),
            prev: origin.clone(),
            cur: origin.clone(),
            origin,
        })
    }

    fn advance(&self, from: &Checkpoint, t: f64) -> Result<Checkpoint> {
        let dt = t - from.t;
        let step = |rho: &ComplexMatrix, span: f64| propagate(&self.gen, &self.cfg, &self.noise, rho, span);
        Ok(Checkpoint {
            t,
            at_t: [step(&from.at_t[0], dt)?, step(&from.at_t[1], dt)?],
            at_2t: [step(&from.at_2t[0], 2.0 * dt)?, step(&from.at_2t[1], 2.0 * dt)?],
        })
    }
}

impl K3Trace for LindbladTrace {
    fn k3(&mut self, t: f64) -> Result<f64> {
        let point = if t >= self.cur.t {
            let next = self.advance(&self.cur, t)?;
            self.prev = std::mem::replace(&mut self.cur, next);
            self.cur.clone()
        } else if t >= self.prev.t {
            self.advance(&self.prev, t)?
        } else {
            self.advance(&self.origin, t)?
        };
        let n = self.noise.normalization;
        Ok(2.0 * combine_branches(&point.at_t, n)? - combine_branches(&point.at_2t, n)?)
    }
}

struct Crossing {
    time: f64,
    bracket: (f64, f64),
}

fn first_crossing(trace: &mut dyn K3Trace, dt: f64, t_max: f64) -> Result<Crossing> {
    let mut lo = 0.0;
    let mut k = 1usize;
    let mut hi = loop {
        let t = k as f64 * dt;
        if t > t_max {
            return Err(Error::NoCrossing { t_max });
        }
        if trace.k3(t)? < 1.0 {
            break t;
        }
        lo = t;
        k += 1;
    };
    while hi - lo > BISECTION_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if trace.k3(mid)? >= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Crossing {
        time: 0.5 * (lo + hi),
        bracket: (lo, hi),
    })
}

fn crossing(cfg: &SuperpositionConfig, noise: &NoiseConfig, model: NoiseModel) -> Result<Crossing> {
    let dt = SCAN_STEP / cfg.omega();
    let t_max = HORIZON / noise.gamma;
    match model {
        NoiseModel::Bloch => first_crossing(&mut BlochStepper::new(cfg, noise)?, dt, t_max),
        NoiseModel::Lindblad => first_crossing(&mut LindbladTrace::new(cfg, noise)?, dt, t_max),
    }
}

fn require_noise(noise: &NoiseConfig) -> Result<()> {
    if noise.gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig("lifetime needs gamma > 0".into()))
    }
}

/// Time up to which K3 stays above 1, for `cfg` and for the same axes without
/// superposition.
pub fn lifetime(cfg: &SuperpositionConfig, noise: &NoiseConfig, model: NoiseModel) -> Result<LifetimeResult> {
    require_noise(noise)?;
    let alpha = crossing(cfg, noise, model)?;
    let tau_0 = if cfg.alpha() == 0.0 {
        alpha.time
    } else {
        crossing(&cfg.with_alpha(0.0)?, noise, model)?.time
    };
    Ok(LifetimeResult {
        tau_alpha: alpha.time,
        tau_0,
        gain: alpha.time / tau_0,
        crossing_bracket: alpha.bracket,
        model,
        scan_step: SCAN_STEP / cfg.omega(),
        t_max: HORIZON / noise.gamma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainPoint {
    pub alpha: f64,
    pub phi: f64,
    pub tau_alpha: Option<f64>,
    pub tau_0: f64,
    pub gain: Option<f64>,
}

/// `τα/τ0` over `alpha_grid` for the planar family at angle `phi`. Points
/// without a crossing before the horizon keep `None`.
pub fn gain_curve(
    phi: f64,
    omega: f64,
    noise: &NoiseConfig,
    alpha_grid: &[f64],
    model: NoiseModel,
) -> Result<Vec<GainPoint>> {
    require_noise(noise)?;
    let base = SuperpositionConfig::planar(0.0, phi, omega)?;
    let tau_0 = crossing(&base, noise, model)?.time;
    alpha_grid
        .par_iter()
        .map(|&alpha| {
            let cfg = base.with_alpha(alpha)?;
            let tau = match crossing(&cfg, noise, model) {
                Ok(c) => Some(c.time),
                Err(Error::NoCrossing { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(GainPoint {
                alpha,
                phi,
                tau_alpha: tau,
                tau_0,
                gain: tau.map(|t| t / tau_0),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::{k3_bloch, k3_lindblad};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn fig_noise() -> NoiseConfig {
        NoiseConfig::new(0.25 / PI).unwrap()
    }

    #[test]
    fn unsuperposed_gain_is_one() {
        let cfg = SuperpositionConfig::planar(0.0, 2.0, 1.0).unwrap();
        let r = lifetime(&cfg, &fig_noise(), NoiseModel::Bloch).unwrap();
        assert_eq!(r.gain, 1.0);
        assert!(r.tau_0.is_finite() && r.tau_0 > 0.0);
    }

    #[test]
    fn bracket_straddles_unity() {
        let cfg = SuperpositionConfig::planar(FRAC_PI_4, 115f64.to_radians(), 1.0).unwrap();
        let noise = fig_noise();
        let r = lifetime(&cfg, &noise, NoiseModel::Bloch).unwrap();
        let (lo, hi) = r.crossing_bracket;
        assert!(lo <= r.tau_alpha && r.tau_alpha <= hi);
        assert!((hi - lo) <= BISECTION_TOL * hi);
        assert!(k3_bloch(&cfg, &noise, lo).unwrap() >= 1.0);
        assert!(k3_bloch(&cfg, &noise, hi).unwrap() < 1.0);
        assert!(r.gain > 1.1);
    }

    #[test]
    fn lindblad_trace_matches_direct_evaluation() {
        let cfg = SuperpositionConfig::planar(0.3, 2.0, 1.0).unwrap();
        let noise = fig_noise();
        let mut trace = LindbladTrace::new(&cfg, &noise).unwrap();
        for t in [0.5, 1.0, 0.7, 0.2] {
            let a = trace.k3(t).unwrap();
            let b = k3_lindblad(&cfg, &noise, t).unwrap();
            assert!((a - b).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn zero_gamma_is_rejected() {
        let cfg = SuperpositionConfig::planar(0.0, 2.0, 1.0).unwrap();
        let r = lifetime(&cfg, &NoiseConfig::new(0.0).unwrap(), NoiseModel::Bloch);
        assert!(matches!(r, Err(Error::InvalidConfig(_))));
    }
}
