use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use lgsim::ancilla::ancilla_state;
use lgsim::lgi::k3_at;
use lgsim::linalg::{eigenvalues_hermitian, identity2, ComplexMatrix};
use lgsim::noise::{
    bloch_rhs, evolve_lindblad, evolve_lindblad_exact, gain_curve, integrate_bloch, k3_bloch,
    k3_lindblad, lifetime, noisy_correlator, BlochVector, NoiseConfig, NoiseModel,
};
use lgsim::superpose::SuperpositionConfig;

const FIG_GAMMA: f64 = 0.25 / PI;

fn noise(gamma: f64) -> NoiseConfig {
    NoiseConfig::new(gamma).unwrap()
}

fn alpha_grid() -> Vec<f64> {
    (0..5).map(|k| k as f64 * PI / 16.0).collect()
}

fn start(alpha: f64) -> ComplexMatrix {
    ancilla_state(alpha).kron(&identity2().scale_real(0.5)).unwrap()
}

#[test]
fn noiseless_models_agree_with_algebra() {
    for (alpha, phi) in [(0.0, 1.0), (FRAC_PI_4, 2.4), (0.3, 2.9)] {
        let cfg = SuperpositionConfig::planar(alpha, phi, 1.0).unwrap();
        for t in [0.4, 1.3, 2.2] {
            let exact = k3_at(&cfg, t).unwrap().k3;
            let bloch = k3_bloch(&cfg, &noise(0.0), t).unwrap();
            let lindblad = k3_lindblad(&cfg, &noise(0.0), t).unwrap();
            assert!((bloch - exact).abs() < 1e-6, "bloch α={alpha} φ={phi} t={t}");
            assert!((lindblad - exact).abs() < 1e-6, "lindblad α={alpha} φ={phi} t={t}");
        }
    }
}

#[test]
fn master_equation_matches_superoperator_exponential() {
    let settings = [(0.0, FRAC_PI_2, PI / 3.0), (FRAC_PI_4, 135f64.to_radians(), 2.0), (0.5, 2.8, 4.0)];
    for (alpha, phi, t) in settings {
        let cfg = SuperpositionConfig::planar(alpha, phi, 1.0).unwrap();
        let rho0 = start(alpha);
        let ode = evolve_lindblad(&rho0, &cfg, &noise(FIG_GAMMA), t).unwrap();
        let exact = evolve_lindblad_exact(&rho0, &cfg, &noise(FIG_GAMMA), t).unwrap();
        assert!(ode.max_abs_diff(&exact) < 1e-8);
    }
}

#[test]
fn master_equation_preserves_states() {
    let cfg = SuperpositionConfig::planar(FRAC_PI_4, 2.0, 1.0).unwrap();
    let mut rho = start(FRAC_PI_4);
    let mut purity = (&rho * &rho).trace().re;
    for _ in 0..20 {
        rho = evolve_lindblad(&rho, &cfg, &noise(FIG_GAMMA), 0.3).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-10);
        assert!(rho.trace().im.abs() < 1e-10);
        assert!(rho.is_hermitian(1e-10));
        assert!(eigenvalues_hermitian(&rho).iter().all(|&v| v >= -1e-10));
        let p = (&rho * &rho).trace().re;
        assert!(p <= purity + 1e-10);
        purity = p;
    }
}

#[test]
fn bloch_norm_never_grows() {
    let cfg = SuperpositionConfig::planar(FRAC_PI_4, 2.5, 1.0).unwrap();
    let traj = integrate_bloch(&cfg, &noise(FIG_GAMMA), 20.0).unwrap();
    let norms: Vec<f64> = traj.samples().map(|(_, s)| s.norm()).collect();
    assert!(norms.windows(2).all(|w| w[1] <= w[0] + 1e-8));

    let clean = integrate_bloch(&cfg, &noise(0.0), 20.0).unwrap();
    assert!(clean.samples().all(|(_, s)| (s.norm() - 1.0).abs() < 1e-8));
}

#[test]
fn damping_acts_on_the_transverse_part_only() {
    let cfg = SuperpositionConfig::planar(0.3, 2.0, 1.0).unwrap();
    for s in [BlochVector::Z, BlochVector::new(0.0, 0.0, -1.0), BlochVector::new(0.6, -0.3, 0.2)] {
        let a = bloch_rhs(&s, 0.7, &cfg, &noise(0.0)).unwrap();
        let b = bloch_rhs(&s, 0.7, &cfg, &noise(0.4)).unwrap();
        assert!((b.sx - a.sx + 0.4 * s.sx).abs() < 1e-15);
        assert!((b.sy - a.sy + 0.4 * s.sy).abs() < 1e-15);
        assert_eq!(b.sz, a.sz);
    }
}

#[test]
fn dephasing_shrinks_the_correlator() {
    let cfg = SuperpositionConfig::planar(FRAC_PI_4, 135f64.to_radians(), 1.0).unwrap();
    let clean = noisy_correlator(&cfg, &noise(0.0), 0.0, FRAC_PI_2).unwrap();
    let noisy = noisy_correlator(&cfg, &noise(FIG_GAMMA), 0.0, FRAC_PI_2).unwrap();
    assert!((clean - 0.7445).abs() < 1e-3);
    assert!(noisy.abs() < clean.abs());
}

// Gains from an independent DOP853 / superoperator-exponential computation.
const BLOCH_GAINS: [(f64, [f64; 5]); 3] = [
    (90.0, [1.0, 1.095536, 1.141256, 1.162466, 1.168720]),
    (115.0, [1.0, 1.134571, 1.196337, 1.224428, 1.232709]),
    (140.0, [1.0, 1.165181, 1.238635, 1.273453, 1.284929]),
];
const LINDBLAD_GAINS: [(f64, [f64; 5]); 3] = [
    (90.0, [1.0, 1.080847, 1.122054, 1.141983, 1.147969]),
    (115.0, [1.0, 1.114470, 1.172404, 1.200847, 1.209562]),
    (140.0, [1.0, 1.141563, 1.214385, 1.253871, 1.267602]),
];
const TAU_0: f64 = 1.5487898642603;

fn check_gains(model: NoiseModel, table: &[(f64, [f64; 5]); 3]) {
    for (phi, expect) in table {
        let curve = gain_curve(phi.to_radians(), 1.0, &noise(FIG_GAMMA), &alpha_grid(), model).unwrap();
        assert!((curve[0].tau_0 - TAU_0).abs() < 1e-5);
        let gains: Vec<f64> = curve.iter().map(|p| p.gain.unwrap()).collect();
        for (g, e) in gains.iter().zip(expect) {
            assert!((g - e).abs() < 1e-4, "{model:?} φ = {phi}: {gains:?}");
        }
        assert!(gains.windows(2).all(|w| w[1] >= w[0] - 1e-6));
    }
}

#[test]
fn bloch_gain_reference_values() {
    check_gains(NoiseModel::Bloch, &BLOCH_GAINS);
}

#[test]
fn lindblad_gain_reference_values() {
    check_gains(NoiseModel::Lindblad, &LINDBLAD_GAINS);
}

#[test]
fn lifetime_agrees_with_gain_curve() {
    let cfg = SuperpositionConfig::planar(FRAC_PI_4, 115f64.to_radians(), 1.0).unwrap();
    let r = lifetime(&cfg, &noise(FIG_GAMMA), NoiseModel::Lindblad).unwrap();
    assert!((r.gain - 1.209562).abs() < 1e-4);
    assert!((r.tau_0 - TAU_0).abs() < 1e-5);
}
