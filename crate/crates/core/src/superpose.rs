//! Normalized superpositions of two SU(2) rotations and their Bloch-sphere
//! kinematics.
//!
//! Two rotations at the same frequency `ω` about axes `n̂` and `m̂`,
//!
//! ```text
//! U0(δ) = exp(−i σn ωδ/2),   U1(δ) = exp(−i σm ωδ/2),
//! ```
//!
//! are mixed with weights `sinα` and `cosα`:
//!
//! ```text
//! Ũ(δ) = sinα U0(δ) + cosα U1(δ),     N²(δ) = ½ tr[Ũ Ũ†],     U(δ) = Ũ(δ) / N(δ).
//! ```
//!
//! `Ũ Ũ†` is proportional to the identity, with
//! `N² = 1 + sin2α (cos²(ωδ/2) + n̂·m̂ sin²(ωδ/2))`, so `U` is unitary whenever
//! `n̂·m̂ > −1`.
//!
//! When both axes lie in the xy-plane, `U(t)` is itself a rotation
//! `cos(f/2) 𝟙 − i sin(f/2) σθ` about the equatorial axis `θ̂`. The rotation
//! angle `f(t)` is not linear in `t`, and its rate `g(t) = ∂t f` is the speed of
//! evolution (SOE). With `B = cosα + sinα`, `A = √(1 + cosφ sin2α)` and
//! `x = ωt/2`:
//!
//! ```text
//! cos(f/2) = B cos x / N,   sin(f/2) = A sin x / N,   g = ω A B / N².
//! ```

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rot, ComplexMatrix, UnitVector3};

const DEGENERACY_FLOOR: f64 = 1e-12;
const PLANAR_TOL: f64 = 1e-12;

/// Parameters of the superposed unitary family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperpositionConfig {
    alpha: f64,
    n_axis: UnitVector3,
    m_axis: UnitVector3,
    omega: f64,
}

impl SuperpositionConfig {
    /// `alpha ∈ [0, π/2]`, `n̂·m̂ > −1`, `omega > 0`.
    pub fn new(alpha: f64, n_axis: UnitVector3, m_axis: UnitVector3, omega: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::InvalidConfig(format!(
                "alpha = {alpha} outside [0, π/2]"
            )));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidConfig(format!("omega = {omega} must be > 0")));
        }
        if n_axis.dot(&m_axis) <= -1.0 + 1e-15 {
            return Err(Error::InvalidConfig("antiparallel axes (n̂·m̂ = −1)".into()));
        }
        Ok(Self {
            alpha,
            n_axis,
            m_axis,
            omega,
        })
    }

    /// The planar family used throughout: `m̂ = x̂` and `n̂ = cosφ x̂ + sinφ ŷ`.
    pub fn planar(alpha: f64, phi: f64, omega: f64) -> Result<Self> {
        Self::new(alpha, UnitVector3::equatorial(phi), UnitVector3::X, omega)
    }

    /// No superposition: plain rotation about `m̂`.
    pub fn unsuperposed(m_axis: UnitVector3, omega: f64) -> Result<Self> {
        Self::new(0.0, m_axis, m_axis, omega)
    }

    /// Same axes and frequency with a different superposition parameter.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(alpha, self.n_axis, self.m_axis, self.omega)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_axis(&self) -> UnitVector3 {
        self.n_axis
    }

    pub fn m_axis(&self) -> UnitVector3 {
        self.m_axis
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn is_planar(&self) -> bool {
        self.n_axis.is_equatorial(PLANAR_TOL) && self.m_axis.is_equatorial(PLANAR_TOL)
    }

    /// `U0(δ) = rot(n̂, ωδ)`
    pub fn u0(&self, delta: f64) -> ComplexMatrix {
        rot(&self.n_axis, self.omega * delta)
    }

    /// `U1(δ) = rot(m̂, ωδ)`
    pub fn u1(&self, delta: f64) -> ComplexMatrix {
        rot(&self.m_axis, self.omega * delta)
    }
}

/// `Ũ = sinα·U0 + cosα·U1` (not unitary).
pub fn unnormalized_superposed(cfg: &SuperpositionConfig, delta: f64) -> ComplexMatrix {
    let (s, c) = cfg.alpha.sin_cos();
    &cfg.u0(delta).scale_real(s) + &cfg.u1(delta).scale_real(c)
}

/// Closed form of `N² = ½ tr[Ũ Ũ†]`.
pub fn norm_factor_sq(cfg: &SuperpositionConfig, delta: f64) -> Result<f64> {
    let (s, c) = (0.5 * cfg.omega * delta).sin_cos();
    let overlap = cfg.n_axis.dot(&cfg.m_axis);
    let n2 = 1.0 + (2.0 * cfg.alpha).sin() * (c * c + overlap * s * s);
    if n2 < DEGENERACY_FLOOR {
        return Err(Error::DegenerateSuperposition(n2));
    }
    Ok(n2)
}

/// `N²` evaluated from the trace of `Ũ Ũ†`.
pub fn norm_factor_sq_trace(cfg: &SuperpositionConfig, delta: f64) -> f64 {
    let u = unnormalized_superposed(cfg, delta);
    0.5 * (&u * &u.dagger()).trace().re
}

/// `U(δ) = Ũ(δ) / N(δ)`; unitary and dependent on `δ = tf − t0` only.
pub fn superposed_unitary(cfg: &SuperpositionConfig, delta: f64) -> Result<ComplexMatrix> {
    let n2 = norm_factor_sq(cfg, delta)?;
    Ok(unnormalized_superposed(cfg, delta).scale(Complex64::new(n2.sqrt().recip(), 0.0)))
}

/// Closed-form Bloch kinematics of a planar superposition.
///
/// The configuration is rotated about ẑ so that `m̂` becomes x̂; `φ` below is
/// the angle from `m̂` to `n̂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SoeProfile {
    /// Longitude of the effective rotation axis θ̂.
    pub theta: f64,
    /// `cosα + sinα`
    pub b: f64,
    /// `√(1 + cosφ sin2α)`
    pub a: f64,
    pub omega: f64,
}

impl SoeProfile {
    pub fn new(cfg: &SuperpositionConfig) -> Result<Self> {
        if !cfg.is_planar() {
            return Err(Error::UnsupportedGeometry);
        }
        let mu = cfg.m_axis.longitude();
        let phi = cfg.n_axis.longitude() - mu;
        let (sa, ca) = cfg.alpha.sin_cos();
        let a2 = 1.0 + phi.cos() * (2.0 * cfg.alpha).sin();
        if a2 < DEGENERACY_FLOOR {
            return Err(Error::DegenerateSuperposition(a2));
        }
        let theta_rel = (sa * phi.sin()).atan2(ca + phi.cos() * sa);
        let theta = (mu + theta_rel).rem_euclid(2.0 * std::f64::consts::PI);
        Ok(Self {
            theta,
            b: ca + sa,
            a: a2.sqrt(),
            omega: cfg.omega,
        })
    }

    /// Effective rotation axis `θ̂ = cosθ x̂ + sinθ ŷ`.
    pub fn axis(&self) -> UnitVector3 {
        UnitVector3::equatorial(self.theta)
    }

    /// `N²(t)` written as `B² cos²x + A² sin²x`.
    pub fn norm_sq(&self, t: f64) -> f64 {
        let (s, c) = (0.5 * self.omega * t).sin_cos();
        self.b * self.b * c * c + self.a * self.a * s * s
    }

    pub fn cos_half_f(&self, t: f64) -> f64 {
        self.b * (0.5 * self.omega * t).cos() / self.norm_sq(t).sqrt()
    }

    pub fn sin_half_f(&self, t: f64) -> f64 {
        self.a * (0.5 * self.omega * t).sin() / self.norm_sq(t).sqrt()
    }

    /// Accumulated rotation angle, lifted continuously from `f(0) = 0`.
    pub fn f(&self, t: f64) -> f64 {
        use std::f64::consts::PI;
        let x = 0.5 * self.omega * t;
        let turns = (x / PI).round();
        let r = x - turns * PI;
        // cos r ≥ 0 here, so atan2 stays on the principal branch.
        2.0 * (turns * PI + (self.a * r.sin()).atan2(self.b * r.cos()))
    }

    /// Speed of evolution `g(t) = ∂t f(t) = ω A B / N²(t)`.
    ///
    /// The textbook quotient `−2 ∂t cos(f/2) / sin(f/2)` has a removable 0/0 at
    /// `sin(f/2) = 0`; the common `sin(ωt/2)` factor cancels analytically, so
    /// this form is regular everywhere, including `t = 0`.
    pub fn g(&self, t: f64) -> f64 {
        // A = B makes N² = A² for all t; skip the rounding in cos² + sin².
        if self.a == self.b {
            return self.omega;
        }
        self.omega * self.a * self.b / self.norm_sq(t)
    }

    /// `max g − min g` over one cycle. `g` oscillates between `ωA/B` and `ωB/A`.
    pub fn nonlinearity(&self) -> f64 {
        self.omega * (self.b / self.a - self.a / self.b).abs()
    }

    /// `cos f(t)`: the z-component of ẑ after the rotation.
    pub fn cos_f(&self, t: f64) -> f64 {
        let (c, s) = (self.cos_half_f(t), self.sin_half_f(t));
        c * c - s * s
    }
}

pub fn axis_theta(cfg: &SuperpositionConfig) -> Result<f64> {
    Ok(SoeProfile::new(cfg)?.theta)
}

pub fn f_of_t(cfg: &SuperpositionConfig, t: f64) -> Result<f64> {
    Ok(SoeProfile::new(cfg)?.f(t))
}

pub fn soe(cfg: &SuperpositionConfig, t: f64) -> Result<f64> {
    Ok(SoeProfile::new(cfg)?.g(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dist_upto_phase, identity2, sigma_x, sigma_y};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    fn planar(alpha: f64, phi_deg: f64) -> SuperpositionConfig {
        SuperpositionConfig::planar(alpha, phi_deg.to_radians(), 1.0).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SuperpositionConfig::planar(-0.1, 1.0, 1.0).is_err());
        assert!(SuperpositionConfig::planar(1.6, 1.0, 1.0).is_err());
        assert!(SuperpositionConfig::planar(0.3, 1.0, 0.0).is_err());
        assert!(SuperpositionConfig::planar(0.3, PI, 1.0).is_err());
        assert!(SuperpositionConfig::planar(FRAC_PI_2, 1.0, 1.0).is_ok());
    }

    #[test]
    fn alpha_zero_collapses_to_u1() {
        let cfg = planar(0.0, 60.0);
        let d = 0.83;
        assert!(unnormalized_superposed(&cfg, d).max_abs_diff(&cfg.u1(d)) < 1e-15);
        assert!(superposed_unitary(&cfg, d).unwrap().max_abs_diff(&rot(&UnitVector3::X, d)) < 1e-15);
    }

    #[test]
    fn identical_branches_scale_by_sqrt2() {
        let axis = UnitVector3::from_spherical(0.4, 1.0);
        let cfg = SuperpositionConfig::new(FRAC_PI_4, axis, axis, 2.0).unwrap();
        let expected = rot(&axis, 2.0 * 0.9).scale_real(2f64.sqrt());
        assert!(unnormalized_superposed(&cfg, 0.9).max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn hand_expansion_at_half_turn() {
        // α = π/4, φ = π/2, ωδ = π: Ũ = −i (σy + σx)/√2
        let cfg = planar(FRAC_PI_4, 90.0);
        let expected = (&sigma_x() + &sigma_y()).scale(Complex64::new(0.0, -FRAC_PI_4.cos()));
        assert!(unnormalized_superposed(&cfg, PI).max_abs_diff(&expected) < 1e-15);
        assert!((norm_factor_sq(&cfg, PI).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_factor_routes_agree() {
        let cfg = planar(FRAC_PI_4, 135.0);
        let closed = norm_factor_sq(&cfg, FRAC_PI_2).unwrap();
        let traced = norm_factor_sq_trace(&cfg, FRAC_PI_2);
        assert!((closed - traced).abs() < 1e-12);
        assert!((closed - 1.14645).abs() < 1e-5);
        assert_eq!(norm_factor_sq(&planar(0.0, 135.0), 2.2).unwrap(), 1.0);
    }

    #[test]
    fn degenerate_superposition_detected() {
        // Nearly antiparallel axes at α = π/4, ωδ = π drive N² to zero.
        let cfg = SuperpositionConfig::planar(FRAC_PI_4, PI - 1e-7, 1.0).unwrap();
        assert!(matches!(
            superposed_unitary(&cfg, PI),
            Err(Error::DegenerateSuperposition(_))
        ));
        assert!(superposed_unitary(&cfg, 1.0).is_ok());
    }

    #[test]
    fn identity_at_zero_time() {
        let cfg = planar(0.3, 120.0);
        assert!(superposed_unitary(&cfg, 0.0).unwrap().max_abs_diff(&identity2()) < 1e-15);
    }

    #[test]
    fn theta_special_values() {
        assert!(axis_theta(&planar(0.0, 70.0)).unwrap().abs() < 1e-15);
        assert!((axis_theta(&planar(FRAC_PI_4, 90.0)).unwrap() - FRAC_PI_4).abs() < 1e-15);
        let off_plane = SuperpositionConfig::new(0.2, UnitVector3::Z, UnitVector3::X, 1.0).unwrap();
        assert_eq!(axis_theta(&off_plane), Err(Error::UnsupportedGeometry));
        assert_eq!(f_of_t(&off_plane, 1.0), Err(Error::UnsupportedGeometry));
    }

    #[test]
    fn rotation_factorization_matches_superposed_unitary() {
        let cfg = planar(FRAC_PI_8, 135.0);
        let p = SoeProfile::new(&cfg).unwrap();
        for &t in &[0.1, 0.9, 2.5, 4.0, 7.7, 13.0] {
            let u = superposed_unitary(&cfg, t).unwrap();
            let r = rot(&p.axis(), p.f(t));
            assert!(u.max_abs_diff(&r) < 1e-13, "t = {t}");
            assert!(dist_upto_phase(&u, &r).unwrap() < 1e-14);
        }
    }

    #[test]
    fn f_of_t_examples() {
        let p = SoeProfile::new(&planar(0.0, 50.0)).unwrap();
        for &t in &[0.0, 0.7, 3.1, 9.4] {
            assert!((p.f(t) - t).abs() < 1e-13);
        }
        for &(alpha, phi) in &[(0.2, 40.0), (FRAC_PI_4, 165.0), (1.2, 10.0)] {
            assert!((f_of_t(&planar(alpha, phi), PI).unwrap() - PI).abs() < 1e-13);
        }
        let p = SoeProfile::new(&planar(FRAC_PI_4, 135.0)).unwrap();
        // cos f = 2 cos²(f/2) − 1 with N² = 1.14645
        let oracle = 2.0 * 2.0 * 0.5 / (1.0 + 0.5 - 0.5 * FRAC_PI_4.cos()) - 1.0;
        assert!((p.f(FRAC_PI_2).cos() - oracle).abs() < 1e-12);
        assert!((p.f(FRAC_PI_2).cos() - 0.7445).abs() < 1e-3);
    }

    #[test]
    fn f_is_monotone_and_continuous() {
        let p = SoeProfile::new(&planar(FRAC_PI_4, 170.0)).unwrap();
        let mut prev = p.f(0.0);
        assert_eq!(prev, 0.0);
        for k in 1..=20_000 {
            let t = k as f64 * 1e-3;
            let cur = p.f(t);
            assert!(cur >= prev - 1e-14);
            assert!(cur - prev < 0.1, "jump at t = {t}");
            assert!((((0.5 * cur).cos()) - p.cos_half_f(t)).abs() < 1e-10);
            assert!((((0.5 * cur).sin()) - p.sin_half_f(t)).abs() < 1e-10);
            prev = cur;
        }
    }

    #[test]
    fn soe_examples() {
        let p = SoeProfile::new(&planar(0.0, 45.0)).unwrap();
        for &t in &[0.0, 1.0, 3.0] {
            assert_eq!(p.g(t), 1.0);
        }
        let p = SoeProfile::new(&planar(FRAC_PI_4, 165.0)).unwrap();
        let samples: Vec<(f64, f64)> = (0..=2000)
            .map(|k| {
                let wt = 2.0 * PI * k as f64 / 2000.0;
                (wt, p.g(wt))
            })
            .collect();
        let (argmin, _) = samples.iter().copied().fold((0.0, f64::MAX), |a, b| if b.1 < a.1 { b } else { a });
        let (argmax, _) = samples.iter().copied().fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
        assert!(argmin.abs() < 1e-9 || (argmin - 2.0 * PI).abs() < 1e-9);
        assert!((argmax - PI).abs() < 1e-2);
    }

    #[test]
    fn soe_matches_finite_difference() {
        let p = SoeProfile::new(&planar(FRAC_PI_4, 90.0)).unwrap();
        let t = FRAC_PI_2;
        let h = 1e-6;
        let fd = (p.f(t + h) - p.f(t - h)) / (2.0 * h);
        assert!(((p.g(t) - fd) / fd).abs() < 1e-5);
    }

    #[test]
    fn general_planar_axes_are_rotated_into_standard_frame() {
        let n = UnitVector3::equatorial(1.9);
        let m = UnitVector3::equatorial(0.4);
        let cfg = SuperpositionConfig::new(0.5, n, m, 1.3).unwrap();
        let p = SoeProfile::new(&cfg).unwrap();
        for &t in &[0.3, 1.4, 3.3] {
            let u = superposed_unitary(&cfg, t).unwrap();
            assert!(u.max_abs_diff(&rot(&p.axis(), p.f(t))) < 1e-13);
        }
    }
}
