//! Explicit Runge-Kutta integrators: classic fixed-step RK4 and adaptive
//! Dormand-Prince 5(4), both recording a trajectory that can be queried at any
//! time through cubic Hermite interpolation.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// State vector an integrator can step.
pub trait OdeState: Clone {
    /// `self + Σ cᵢ xᵢ`
    fn lincomb(&self, terms: &[(f64, &Self)]) -> Self;
    /// Real components, used for error control and divergence checks.
    fn components(&self) -> Vec<f64>;
}

impl<const N: usize> OdeState for [f64; N] {
    fn lincomb(&self, terms: &[(f64, &Self)]) -> Self {
        let mut out = *self;
        for &(c, x) in terms {
            if c != 0.0 {
                for (o, xi) in out.iter_mut().zip(x) {
                    *o += c * xi;
                }
            }
        }
        out
    }

    fn components(&self) -> Vec<f64> {
        self.to_vec()
    }
}

impl OdeState for ComplexMatrix {
    fn lincomb(&self, terms: &[(f64, &Self)]) -> Self {
        let mut out = self.clone();
        for &(c, x) in terms {
            if c != 0.0 {
                out = &out + &x.scale_real(c);
            }
        }
        out
    }

    fn components(&self) -> Vec<f64> {
        self.entries().iter().flat_map(|z| [z.re, z.im]).collect()
    }
}

fn check_finite<S: OdeState>(t: f64, y: &S) -> Result<()> {
    if y.components().iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::SolverDiverged {
            t,
            reason: "non-finite state".into(),
        })
    }
}

pub fn rk4_step<S: OdeState>(f: &impl Fn(f64, &S) -> S, t: f64, y: &S, h: f64) -> S {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &y.lincomb(&[(0.5 * h, &k1)]));
    let k3 = f(t + 0.5 * h, &y.lincomb(&[(0.5 * h, &k2)]));
    let k4 = f(t + h, &y.lincomb(&[(h, &k3)]));
    y.lincomb(&[
        (h / 6.0, &k1),
        (h / 3.0, &k2),
        (h / 3.0, &k3),
        (h / 6.0, &k4),
    ])
}

/// Integrates from `t0` to `t1` with equal RK4 steps no longer than `max_step`.
pub fn rk4_integrate<S: OdeState>(
    f: &impl Fn(f64, &S) -> S,
    t0: f64,
    y0: &S,
    t1: f64,
    max_step: f64,
) -> Result<S> {
    if t1 <= t0 {
        return Ok(y0.clone());
    }
    let n = ((t1 - t0) / max_step).ceil().max(1.0) as usize;
    let h = (t1 - t0) / n as f64;
    let mut y = y0.clone();
    for k in 0..n {
        y = rk4_step(f, t0 + k as f64 * h, &y, h);
    }
    check_finite(t1, &y)?;
    Ok(y)
}

/// Accepted solution points with derivatives, for dense output.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    ts: Vec<f64>,
    ys: Vec<S>,
    fs: Vec<S>,
}

impl<S: OdeState> Trajectory<S> {
    fn start(t0: f64, y0: S, f0: S) -> Self {
        Self {
            ts: vec![t0],
            ys: vec![y0],
            fs: vec![f0],
        }
    }

    fn push(&mut self, t: f64, y: S, f: S) {
        self.ts.push(t);
        self.ys.push(y);
        self.fs.push(f);
    }

    pub fn t_start(&self) -> f64 {
        self.ts[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.ts.last().expect("trajectory is never empty")
    }

    pub fn times(&self) -> &[f64] {
        &self.ts
    }

    pub fn states(&self) -> &[S] {
        &self.ys
    }

    pub fn last(&self) -> (&f64, &S) {
        (self.ts.last().unwrap(), self.ys.last().unwrap())
    }

    /// Cubic Hermite interpolation; `None` outside the covered interval.
    pub fn at(&self, t: f64) -> Option<S> {
        if t < self.t_start() || t > self.t_end() {
            return None;
        }
        let i = match self.ts.binary_search_by(|probe| probe.total_cmp(&t)) {
            Ok(i) => return Some(self.ys[i].clone()),
            Err(i) => i - 1,
        };
        let (t0, t1) = (self.ts[i], self.ts[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Some(self.ys[i].lincomb(&[
            (h00 - 1.0, &self.ys[i]),
            (h10 * h, &self.fs[i]),
            (h01, &self.ys[i + 1]),
            (h11 * h, &self.fs[i + 1]),
        ]))
    }
}

/// Tolerances for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-12,
            rel: 1e-12,
        }
    }
}

const MAX_STEPS: usize = 5_000_000;

// Dormand-Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Adaptive Dormand-Prince integrator that can be advanced incrementally.
pub struct AdaptiveIntegrator<S, F> {
    f: F,
    tol: Tolerance,
    h: f64,
    max_step: f64,
    traj: Trajectory<S>,
}

impl<S: OdeState, F: Fn(f64, &S) -> S> AdaptiveIntegrator<S, F> {
    /// `max_step` bounds the step so fast features of a time-dependent
    /// generator cannot be skipped.
    pub fn new(f: F, t0: f64, y0: S, tol: Tolerance, max_step: f64) -> Self {
        let f0 = f(t0, &y0);
        let h = (0.01 * max_step).max(1e-6);
        Self {
            traj: Trajectory::start(t0, y0, f0),
            f,
            tol,
            h,
            max_step,
        }
    }

    pub fn trajectory(&self) -> &Trajectory<S> {
        &self.traj
    }

    pub fn into_trajectory(self) -> Trajectory<S> {
        self.traj
    }

    fn error_norm(&self, err: &S, y0: &S, y1: &S) -> f64 {
        let e = err.components();
        let a = y0.components();
        let b = y1.components();
        let sum: f64 = e
            .iter()
            .zip(a.iter().zip(&b))
            .map(|(ei, (ai, bi))| {
                let scale = self.tol.abs + self.tol.rel * ai.abs().max(bi.abs());
                (ei / scale).powi(2)
            })
            .sum();
        (sum / e.len() as f64).sqrt()
    }

    /// Extends the trajectory so that it covers `t_end`.
    pub fn advance_to(&mut self, t_end: f64) -> Result<()> {
        let mut steps = 0usize;
        while self.traj.t_end() < t_end {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::SolverDiverged {
                    t: self.traj.t_end(),
                    reason: "step budget exhausted".into(),
                });
            }
            let t = self.traj.t_end();
            let y = self.traj.ys.last().unwrap().clone();
            let k1 = self.traj.fs.last().unwrap().clone();
            let h_try = self.h.min(self.max_step);
            let h = h_try.min(t_end - t).max(f64::EPSILON * t.abs().max(1.0));
            let f = &self.f;
            let k2 = f(t + C2 * h, &y.lincomb(&[(h * A21, &k1)]));
            let k3 = f(t + C3 * h, &y.lincomb(&[(h * A31, &k1), (h * A32, &k2)]));
            let k4 = f(
                t + C4 * h,
                &y.lincomb(&[(h * A41, &k1), (h * A42, &k2), (h * A43, &k3)]),
            );
            let k5 = f(
                t + C5 * h,
                &y.lincomb(&[(h * A51, &k1), (h * A52, &k2), (h * A53, &k3), (h * A54, &k4)]),
            );
            let k6 = f(
                t + h,
                &y.lincomb(&[
                    (h * A61, &k1),
                    (h * A62, &k2),
                    (h * A63, &k3),
                    (h * A64, &k4),
                    (h * A65, &k5),
                ]),
            );
            let y_new = y.lincomb(&[
                (h * B1, &k1),
                (h * B3, &k3),
                (h * B4, &k4),
                (h * B5, &k5),
                (h * B6, &k6),
            ]);
            let k7 = f(t + h, &y_new);
            let zero = y.lincomb(&[(-1.0, &y)]);
            let err = zero.lincomb(&[
                (h * E1, &k1),
                (h * E3, &k3),
                (h * E4, &k4),
                (h * E5, &k5),
                (h * E6, &k6),
                (h * E7, &k7),
            ]);
            let norm = self.error_norm(&err, &y, &y_new);
            if !norm.is_finite() {
                return Err(Error::SolverDiverged {
                    t,
                    reason: "non-finite error estimate".into(),
                });
            }
            let factor = if norm == 0.0 {
                5.0
            } else {
                (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
            };
            if norm <= 1.0 {
                self.traj.push(t + h, y_new, k7);
                // A step clipped to land on t_end says nothing about the
                // natural step size.
                self.h = if h < h_try { h_try } else { (h * factor).min(self.max_step) };
            } else {
                self.h = h * factor.min(1.0);
                if self.h < 1e-14 * t.abs().max(1.0) {
                    return Err(Error::SolverDiverged {
                        t,
                        reason: "step size underflow".into(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Fixed-step RK4 trajectory from `t0` to `t1`.
pub fn rk4_trajectory<S: OdeState>(
    f: &impl Fn(f64, &S) -> S,
    t0: f64,
    y0: S,
    t1: f64,
    max_step: f64,
) -> Result<Trajectory<S>> {
    let f0 = f(t0, &y0);
    let mut traj = Trajectory::start(t0, y0, f0);
    if t1 > t0 {
        let n = ((t1 - t0) / max_step).ceil().max(1.0) as usize;
        let h = (t1 - t0) / n as f64;
        for k in 1..=n {
            let t = t0 + (k - 1) as f64 * h;
            let y = rk4_step(f, t, traj.ys.last().unwrap(), h);
            check_finite(t + h, &y)?;
            let fy = f(t + h, &y);
            traj.push(t0 + k as f64 * h, y, fy);
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oscillator(_t: f64, y: &[f64; 2]) -> [f64; 2] {
        [y[1], -y[0]]
    }

    #[test]
    fn rk4_harmonic_oscillator() {
        let y = rk4_integrate(&oscillator, 0.0, &[1.0, 0.0], 3.0, 1e-3).unwrap();
        assert!((y[0] - 3f64.cos()).abs() < 1e-12);
        assert!((y[1] + 3f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn adaptive_matches_exact_solution_with_dense_output() {
        let mut integ = AdaptiveIntegrator::new(oscillator, 0.0, [1.0, 0.0], Tolerance::default(), 0.5);
        integ.advance_to(10.0).unwrap();
        let traj = integ.trajectory();
        assert!(traj.t_end() >= 10.0);
        for k in 0..=100 {
            let t = 0.1 * k as f64;
            let y = traj.at(t).unwrap();
            assert!((y[0] - t.cos()).abs() < 1e-8, "t = {t}");
        }
        assert!(traj.at(-1.0).is_none());
    }

    #[test]
    fn time_dependent_rhs() {
        // y' = cos t, y(0) = 0 → y = sin t
        let f = |t: f64, _y: &[f64; 1]| [t.cos()];
        let mut integ = AdaptiveIntegrator::new(f, 0.0, [0.0], Tolerance::default(), 0.2);
        integ.advance_to(4.0).unwrap();
        let y = integ.trajectory().at(4.0).unwrap();
        assert!((y[0] - 4f64.sin()).abs() < 1e-9);
    }

    #[test]
    fn blow_up_is_reported() {
        let f = |_t: f64, y: &[f64; 1]| [y[0] * y[0]];
        let mut integ = AdaptiveIntegrator::new(f, 0.0, [1.0], Tolerance::default(), 0.1);
        assert!(matches!(integ.advance_to(2.0), Err(Error::SolverDiverged { .. })));
    }
}
