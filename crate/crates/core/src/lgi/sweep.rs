use rayon::prelude::*;
use serde::Serialize;

use super::correlator::{k3_at, CorrelatorSet};
use crate::error::{Error, Result};
use crate::linalg::UnitVector3;
use crate::superpose::SuperpositionConfig;

/// Which ends of a sweep range are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Endpoints {
    /// `[start, end]`
    Closed,
    /// `[start, end)`
    HalfOpen,
    /// `(start, end)`
    Open,
}

/// One named, uniformly sampled sweep parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAxis {
    pub name: String,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
    pub endpoints: Endpoints,
}

impl SweepAxis {
    pub fn new(
        name: impl Into<String>,
        start: f64,
        end: f64,
        steps: usize,
        endpoints: Endpoints,
    ) -> Result<Self> {
        let name = name.into();
        if steps < 2 {
            return Err(Error::InvalidConfig(format!("{name}: steps = {steps} < 2")));
        }
        if !(start.is_finite() && end.is_finite() && start <= end) {
            return Err(Error::InvalidConfig(format!(
                "{name}: range [{start}, {end}] is not ordered"
            )));
        }
        Ok(Self {
            name,
            start,
            end,
            steps,
            endpoints,
        })
    }

    /// A single sample at `value`.
    pub fn fixed(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            start: value,
            end: value,
            steps: 1,
            endpoints: Endpoints::Closed,
        }
    }

    /// One full cycle `ωt ∈ [0, 2π]`.
    pub fn full_cycle(steps: usize) -> Result<Self> {
        Self::new("omega_t", 0.0, 2.0 * std::f64::consts::PI, steps, Endpoints::Closed)
    }

    pub fn values(&self) -> Vec<f64> {
        let span = self.end - self.start;
        let n = self.steps;
        if n == 1 {
            return vec![self.start];
        }
        match self.endpoints {
            Endpoints::Closed => (0..n)
                .map(|k| self.start + span * k as f64 / (n - 1) as f64)
                .collect(),
            Endpoints::HalfOpen => (0..n)
                .map(|k| self.start + span * k as f64 / n as f64)
                .collect(),
            Endpoints::Open => (1..=n)
                .map(|k| self.start + span * k as f64 / (n + 1) as f64)
                .collect(),
        }
    }
}

/// Location and value of the largest K3 over an `ωt` range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct K3Max {
    pub k3max: f64,
    pub argmax_omega_t: f64,
}

const GOLDEN_TOL: f64 = 1e-6;

/// K3 through the stationarity shortcut `2 C(0, t) − C(0, 2t)`.
fn k3_fast(cfg: &SuperpositionConfig, omega_t: f64) -> Result<f64> {
    let t = omega_t / cfg.omega();
    let c = |d: f64| super::correlator(cfg, 0.0, d, &UnitVector3::Z);
    Ok(2.0 * c(t)? - c(2.0 * t)?)
}

fn golden_max(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > GOLDEN_TOL {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Grid peaks this close to the grid maximum are refined as well.
const CANDIDATE_WINDOW: f64 = 1e-3;
/// Refined maxima closer than this are ties.
const TIE_TOL: f64 = 1e-10;

/// Largest K3 over an `ωt` grid, refined by golden-section search around every
/// near-maximal grid peak. Ties go to the smallest `ωt`.
pub fn k3_max(cfg: &SuperpositionConfig, omega_t_grid: &SweepAxis) -> Result<K3Max> {
    let grid = omega_t_grid.values();
    let values = grid
        .iter()
        .map(|&wt| k3_fast(cfg, wt))
        .collect::<Result<Vec<_>>>()?;
    let grid_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let last = grid.len() - 1;

    let mut best = K3Max {
        k3max: f64::NEG_INFINITY,
        argmax_omega_t: f64::INFINITY,
    };
    let mut consider = |x: f64, v: f64| {
        if v > best.k3max + TIE_TOL || ((v - best.k3max).abs() <= TIE_TOL && x < best.argmax_omega_t) {
            best = K3Max {
                k3max: v,
                argmax_omega_t: x,
            };
        }
    };
    for i in 0..=last {
        let v = values[i];
        let left = if i > 0 { values[i - 1] } else { f64::NEG_INFINITY };
        let right = if i < last { values[i + 1] } else { f64::NEG_INFINITY };
        if v < grid_max - CANDIDATE_WINDOW || v < left || v < right {
            continue;
        }
        consider(grid[i], v);
        let (x, rv) = golden_max(
            |wt| k3_fast(cfg, wt),
            grid[i.saturating_sub(1)],
            grid[(i + 1).min(last)],
        )?;
        consider(x, rv);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TtbEntry {
    pub eta: f64,
    pub xi: f64,
    pub k3max: f64,
    pub argmax_omega_t: f64,
}

/// K3max with no superposition (`α = 0`) and the rotation axis swept over the
/// sphere, `m̂ = (η, ξ)`. Entries are ordered η-major.
pub fn ttb_map(eta: &SweepAxis, xi: &SweepAxis, omega_t_grid: &SweepAxis) -> Result<Vec<TtbEntry>> {
    let etas = eta.values();
    let xis = xi.values();
    let points: Vec<(f64, f64)> = etas
        .iter()
        .flat_map(|&e| xis.iter().map(move |&x| (e, x)))
        .collect();
    points
        .par_iter()
        .map(|&(eta, xi)| {
            let cfg = SuperpositionConfig::unsuperposed(UnitVector3::from_spherical(eta, xi), 1.0)?;
            let m = k3_max(&cfg, omega_t_grid)?;
            Ok(TtbEntry {
                eta,
                xi,
                k3max: m.k3max,
                argmax_omega_t: m.argmax_omega_t,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceEntry {
    pub alpha: f64,
    pub phi: f64,
    pub k3max: f64,
    pub argmax_omega_t: f64,
}

/// K3max over the planar `(α, φ)` family. Entries are ordered α-major.
pub fn k3max_surface(
    alpha: &SweepAxis,
    phi: &SweepAxis,
    omega_t_grid: &SweepAxis,
) -> Result<Vec<SurfaceEntry>> {
    let alphas = alpha.values();
    let phis = phi.values();
    let points: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| phis.iter().map(move |&p| (a, p)))
        .collect();
    points
        .par_iter()
        .map(|&(alpha, phi)| {
            let cfg = SuperpositionConfig::planar(alpha, phi, 1.0)?;
            let m = k3_max(&cfg, omega_t_grid)?;
            Ok(SurfaceEntry {
                alpha,
                phi,
                k3max: m.k3max,
                argmax_omega_t: m.argmax_omega_t,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub omega_t: f64,
    pub correlators: CorrelatorSet,
}

/// Samples `k3_at` along an `ωt` grid.
pub fn k3_curve(cfg: &SuperpositionConfig, omega_t_grid: &SweepAxis) -> Result<Vec<CurvePoint>> {
    omega_t_grid
        .values()
        .par_iter()
        .map(|&omega_t| {
            Ok(CurvePoint {
                omega_t,
                correlators: k3_at(cfg, omega_t / cfg.omega())?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn axis_validation_and_sampling() {
        assert!(SweepAxis::new("a", 0.0, 1.0, 1, Endpoints::Closed).is_err());
        assert!(SweepAxis::new("a", 1.0, 0.0, 5, Endpoints::Closed).is_err());
        let closed = SweepAxis::new("a", 0.0, 1.0, 5, Endpoints::Closed).unwrap();
        assert_eq!(closed.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let half = SweepAxis::new("a", 0.0, 1.0, 4, Endpoints::HalfOpen).unwrap();
        assert_eq!(half.values(), vec![0.0, 0.25, 0.5, 0.75]);
        let open = SweepAxis::new("a", 0.0, 1.0, 3, Endpoints::Open).unwrap();
        assert_eq!(open.values(), vec![0.25, 0.5, 0.75]);
        assert_eq!(SweepAxis::fixed("a", 0.3).values(), vec![0.3]);
    }

    #[test]
    fn unsuperposed_equatorial_reaches_tsirelson() {
        let cfg = SuperpositionConfig::unsuperposed(UnitVector3::equatorial(0.7), 1.0).unwrap();
        let m = k3_max(&cfg, &SweepAxis::full_cycle(2000).unwrap()).unwrap();
        assert!((m.k3max - 1.5).abs() < 1e-6);
        // smallest maximizer is ωt = π/3
        assert!((m.argmax_omega_t - PI / 3.0).abs() < 1e-5);
    }

    #[test]
    fn polar_axis_gives_unity() {
        let cfg = SuperpositionConfig::unsuperposed(UnitVector3::Z, 1.0).unwrap();
        let m = k3_max(&cfg, &SweepAxis::full_cycle(200).unwrap()).unwrap();
        assert!((m.k3max - 1.0).abs() < 1e-12);
        assert_eq!(m.argmax_omega_t, 0.0);
    }

    #[test]
    fn ttb_map_is_xi_invariant() {
        let eta = SweepAxis::new("eta", FRAC_PI_4, FRAC_PI_2, 2, Endpoints::Closed).unwrap();
        let xi = SweepAxis::new("xi", 0.0, PI / 3.0, 2, Endpoints::Closed).unwrap();
        let map = ttb_map(&eta, &xi, &SweepAxis::full_cycle(2000).unwrap()).unwrap();
        assert_eq!(map.len(), 4);
        assert!((map[0].k3max - map[1].k3max).abs() < 1e-9);
        assert!((map[2].k3max - 1.5).abs() < 1e-6);
        assert!((map[3].k3max - 1.5).abs() < 1e-6);
    }

    #[test]
    fn curve_samples_k3_at() {
        let cfg = SuperpositionConfig::planar(FRAC_PI_4, 160f64.to_radians(), 1.0).unwrap();
        let grid = SweepAxis::new("omega_t", 0.0, PI, 101, Endpoints::Closed).unwrap();
        let curve = k3_curve(&cfg, &grid).unwrap();
        assert_eq!(curve.len(), 101);
        for idx in [7, 50, 93] {
            let p = curve[idx];
            assert_eq!(p.correlators, k3_at(&cfg, p.omega_t).unwrap());
        }
    }
}
