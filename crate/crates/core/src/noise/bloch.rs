use serde::Serialize;

use super::ode::{rk4_trajectory, AdaptiveIntegrator, Trajectory};
use super::{NoiseConfig, Solver};
use crate::error::{Error, Result};
use crate::superpose::{SoeProfile, SuperpositionConfig};

/// Bloch vector in `(sx, sy, sz)` order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl BlochVector {
    pub const Z: Self = Self {
        sx: 0.0,
        sy: 0.0,
        sz: 1.0,
    };

    pub fn new(sx: f64, sy: f64, sz: f64) -> Self {
        Self { sx, sy, sz }
    }

    /// Builds a vector from components listed as `(sz, sx, sy)`.
    pub fn from_zxy([sz, sx, sy]: [f64; 3]) -> Self {
        Self { sx, sy, sz }
    }

    pub fn to_zxy(self) -> [f64; 3] {
        [self.sz, self.sx, self.sy]
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.sx, self.sy, self.sz]
    }

    pub fn from_array([sx, sy, sz]: [f64; 3]) -> Self {
        Self { sx, sy, sz }
    }

    pub fn norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self {
            sx: self.sy * o.sz - self.sz * o.sy,
            sy: self.sz * o.sx - self.sx * o.sz,
            sz: self.sx * o.sy - self.sy * o.sx,
        }
    }
}

fn rhs_with_profile(s: &[f64; 3], t: f64, profile: &SoeProfile, gamma: f64) -> [f64; 3] {
    let g = profile.g(t);
    let (st, ct) = profile.theta.sin_cos();
    // g θ̂ × S with θ̂ = (cosθ, sinθ, 0)
    [
        g * st * s[2] - gamma * s[0],
        -g * ct * s[2] - gamma * s[1],
        g * (ct * s[1] - st * s[0]),
    ]
}

/// `∂t S = g(t) θ̂ × S − γ ẑ × (S × ẑ)`. The damping term removes `γ` times
/// the transverse part of `S`.
pub fn bloch_rhs(s: &BlochVector, t: f64, cfg: &SuperpositionConfig, noise: &NoiseConfig) -> Result<BlochVector> {
    let profile = SoeProfile::new(cfg)?;
    Ok(BlochVector::from_array(rhs_with_profile(&s.to_array(), t, &profile, noise.gamma)))
}

/// Solution of the Bloch equation from `S(0) = ẑ`.
#[derive(Debug, Clone)]
pub struct BlochTrajectory {
    inner: Trajectory<[f64; 3]>,
}

impl BlochTrajectory {
    pub fn t_end(&self) -> f64 {
        self.inner.t_end()
    }

    /// Interpolated state; `None` outside `[0, t_end]`.
    pub fn at(&self, t: f64) -> Option<BlochVector> {
        self.inner.at(t).map(BlochVector::from_array)
    }

    /// Accepted solver points.
    pub fn samples(&self) -> impl Iterator<Item = (f64, BlochVector)> + '_ {
        self.inner
            .times()
            .iter()
            .zip(self.inner.states())
            .map(|(&t, &s)| (t, BlochVector::from_array(s)))
    }
}

/// Incrementally extended Bloch solution; used by the lifetime scan.
pub(crate) struct BlochStepper {
    kind: StepperKind,
}

type BlochRhs = Box<dyn Fn(f64, &[f64; 3]) -> [f64; 3] + Send + Sync>;

enum StepperKind {
    Adaptive(AdaptiveIntegrator<[f64; 3], BlochRhs>),
    Fixed {
        rhs: BlochRhs,
        step: f64,
        traj: Trajectory<[f64; 3]>,
    },
}

impl BlochStepper {
    pub(crate) fn new(cfg: &SuperpositionConfig, noise: &NoiseConfig) -> Result<Self> {
        let profile = SoeProfile::new(cfg)?;
        let gamma = noise.gamma;
        let rhs: BlochRhs = Box::new(move |t, s| rhs_with_profile(s, t, &profile, gamma));
        // Short steps keep the cubic dense output at the 1e-10 level.
        let max_step = 0.02 / cfg.omega();
        let kind = match noise.solver {
            Solver::Auto => StepperKind::Adaptive(AdaptiveIntegrator::new(
                rhs,
                0.0,
                BlochVector::Z.to_array(),
                Default::default(),
                max_step,
            )),
            Solver::Rk45Adaptive { tolerance } => StepperKind::Adaptive(AdaptiveIntegrator::new(
                rhs,
                0.0,
                BlochVector::Z.to_array(),
                tolerance,
                max_step,
            )),
            Solver::Rk4Fixed { step } => {
                let traj = rk4_trajectory(&rhs, 0.0, BlochVector::Z.to_array(), 0.0, step)?;
                StepperKind::Fixed { rhs, step, traj }
            }
        };
        Ok(Self { kind })
    }

    pub(crate) fn advance_to(&mut self, t: f64) -> Result<()> {
        match &mut self.kind {
            StepperKind::Adaptive(integ) => integ.advance_to(t),
            StepperKind::Fixed { rhs, step, traj } => {
                if traj.t_end() < t {
                    // Rebuild on a uniform grid covering t with some headroom.
                    let t_new = (2.0 * traj.t_end()).max(t);
                    *traj = rk4_trajectory(rhs, 0.0, BlochVector::Z.to_array(), t_new, *step)?;
                }
                Ok(())
            }
        }
    }

    pub(crate) fn trajectory(&self) -> &Trajectory<[f64; 3]> {
        match &self.kind {
            StepperKind::Adaptive(integ) => integ.trajectory(),
            StepperKind::Fixed { traj, .. } => traj,
        }
    }

    pub(crate) fn into_trajectory(self) -> Trajectory<[f64; 3]> {
        match self.kind {
            StepperKind::Adaptive(integ) => integ.into_trajectory(),
            StepperKind::Fixed { traj, .. } => traj,
        }
    }

    fn sz(&self, t: f64) -> Result<f64> {
        self.trajectory().at(t).map(|s| s[2]).ok_or(Error::SolverDiverged {
            t,
            reason: "trajectory does not reach the requested time".into(),
        })
    }

    /// `K3(t) = ẑ·(2S(t) − S(2t))`, extending the trajectory to `2t`.
    pub(crate) fn k3(&mut self, t: f64) -> Result<f64> {
        self.advance_to(2.0 * t)?;
        Ok(2.0 * self.sz(t)? - self.sz(2.0 * t)?)
    }
}

/// Integrates the Bloch equation from `S(0) = ẑ` to `t_end`.
pub fn integrate_bloch(cfg: &SuperpositionConfig, noise: &NoiseConfig, t_end: f64) -> Result<BlochTrajectory> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidConfig(format!("t_end = {t_end} must be positive")));
    }
    let mut stepper = BlochStepper::new(cfg, noise)?;
    stepper.advance_to(t_end)?;
    Ok(BlochTrajectory {
        inner: stepper.into_trajectory(),
    })
}

/// `K3(t) = ẑ·(2S(t) − S(2t))` under the Bloch equation.
pub fn k3_bloch(cfg: &SuperpositionConfig, noise: &NoiseConfig, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::InvalidConfig(format!("t = {t} is negative")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    BlochStepper::new(cfg, noise)?.k3(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgi::k3_at;
    use crate::linalg::{rot, sigma_x, sigma_y, sigma_z, ComplexMatrix};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn noise(gamma: f64) -> NoiseConfig {
        NoiseConfig::new(gamma).unwrap()
    }

    #[test]
    fn rhs_limits() {
        let cfg = SuperpositionConfig::planar(0.0, FRAC_PI_2, 1.3).unwrap();
        // α = 0: θ̂ = x̂, g = ω
        let s = BlochVector::new(0.2, -0.4, 0.5);
        let r = bloch_rhs(&s, 0.8, &cfg, &noise(0.0)).unwrap();
        let expect = BlochVector::new(1.0, 0.0, 0.0).cross(&s);
        assert!((r.sx - 1.3 * expect.sx).abs() < 1e-15);
        assert!((r.sy - 1.3 * expect.sy).abs() < 1e-15);
        assert!((r.sz - 1.3 * expect.sz).abs() < 1e-15);

        let r = bloch_rhs(&BlochVector::Z, 0.3, &cfg, &noise(0.7)).unwrap();
        assert_eq!(r.sx, 0.0);
        assert!((r.sy + 1.3).abs() < 1e-15);
    }

    #[test]
    fn zxy_ordering_round_trip() {
        let s = BlochVector::from_zxy([1.0, 0.0, 0.0]);
        assert_eq!(s, BlochVector::Z);
        assert_eq!(BlochVector::new(1.0, 2.0, 3.0).to_zxy(), [3.0, 1.0, 2.0]);
    }

    #[test]
    fn noiseless_trajectory_is_the_algebraic_rotation() {
        let cfg = SuperpositionConfig::planar(FRAC_PI_4, 135f64.to_radians(), 1.0).unwrap();
        let profile = SoeProfile::new(&cfg).unwrap();
        let traj = integrate_bloch(&cfg, &noise(0.0), 4.0 * PI).unwrap();
        for k in 0..=40 {
            let t = 0.1 * PI * k as f64;
            let s = traj.at(t).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-8, "t = {t}: {:e}", s.norm() - 1.0);
            let r = rot(&profile.axis(), profile.f(t));
            let rho = sigma_z().conjugate_by(&r);
            let expect = |p: ComplexMatrix| 0.5 * (&p * &rho).trace().re;
            assert!((s.sx - expect(sigma_x())).abs() < 1e-6, "t = {t}");
            assert!((s.sy - expect(sigma_y())).abs() < 1e-6, "t = {t}");
            assert!((s.sz - expect(sigma_z())).abs() < 1e-6, "t = {t}");
        }
    }

    #[test]
    fn k3_noiseless_matches_algebraic() {
        let cfg = SuperpositionConfig::planar(FRAC_PI_4, 160f64.to_radians(), 1.0).unwrap();
        assert_eq!(k3_bloch(&cfg, &noise(0.0), 0.0).unwrap(), 1.0);
        for t in [0.3, 1.1, 2.5] {
            let a = k3_at(&cfg, t).unwrap().k3;
            let b = k3_bloch(&cfg, &noise(0.0), t).unwrap();
            assert!((a - b).abs() < 1e-6, "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn strong_dephasing_kills_k3() {
        // Sz relaxes at rate ~ g²/γ, so the washout needs t ≫ γ/ω².
        let cfg = SuperpositionConfig::planar(FRAC_PI_4, FRAC_PI_2, 1.0).unwrap();
        let k = k3_bloch(&cfg, &noise(20.0), 200.0).unwrap();
        assert!(k.abs() < 0.01, "{k}");
        // at fixed t the same damping freezes Sz instead
        let k = k3_bloch(&cfg, &noise(200.0), 1.5).unwrap();
        assert!((k - 1.0).abs() < 0.05, "{k}");
    }

    #[test]
    fn fixed_step_solver_agrees() {
        let cfg = SuperpositionConfig::planar(0.3, 2.0, 1.0).unwrap();
        let fixed = NoiseConfig::new(0.1)
            .unwrap()
            .with_solver(Solver::Rk4Fixed { step: 1e-3 })
            .unwrap();
        let a = k3_bloch(&cfg, &fixed, 1.7).unwrap();
        let b = k3_bloch(&cfg, &noise(0.1), 1.7).unwrap();
        assert!((a - b).abs() < 1e-8);
    }
}
