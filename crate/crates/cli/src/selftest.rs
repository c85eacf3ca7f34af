//! Randomized cross-checks between independent routes through the library.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

use lgsim::ancilla::{interferometer_signal, normalization_signal, postselect_map};
use lgsim::lgi::{correlator, k3_at};
use lgsim::linalg::{
    dist_upto_phase, eigenvalues_hermitian, identity2, sigma_x, sigma_y, sigma_z, ComplexMatrix,
    UnitVector3,
};
use lgsim::noise::{evolve_lindblad, evolve_lindblad_exact, k3_bloch, k3_lindblad, NoiseConfig};
use lgsim::superpose::{superposed_unitary, SoeProfile, SuperpositionConfig};
use lgsim::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::experiments::{Check, Outcome};
use crate::table::Table;

pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    0.5 * eigenvalues_hermitian(&(a - b)).iter().map(|v| v.abs()).sum::<f64>()
}

/// Mixed qubit state with a uniformly random Bloch direction and radius.
pub fn random_state(rng: &mut impl Rng) -> ComplexMatrix {
    let r: f64 = rng.random_range(0.0..1.0);
    let n = UnitVector3::from_spherical(rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI));
    let [x, y, z] = n.components();
    let bloch = &(&sigma_x().scale_real(x) + &sigma_y().scale_real(y)) + &sigma_z().scale_real(z);
    (&identity2() + &bloch.scale_real(r)).scale_real(0.5)
}

/// Planar configuration with `φ` kept away from `π`.
pub fn random_planar(rng: &mut impl Rng) -> Result<SuperpositionConfig> {
    SuperpositionConfig::planar(rng.random_range(0.0..FRAC_PI_2), rng.random_range(0.0..3.0), 1.0)
}

struct Stat {
    name: &'static str,
    samples: usize,
    value: f64,
    threshold: f64,
    /// The value must exceed the threshold instead of staying below it.
    above: bool,
}

impl Stat {
    fn below(name: &'static str, samples: usize, value: f64, threshold: f64) -> Self {
        Self {
            name,
            samples,
            value,
            threshold,
            above: false,
        }
    }

    fn passed(&self) -> bool {
        if self.above {
            self.value > self.threshold
        } else {
            self.value < self.threshold
        }
    }
}

fn postselection(rng: &mut ChaCha8Rng) -> Result<Stat> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let cfg = random_planar(rng)?;
        let delta = rng.random_range(0.0..2.0 * PI);
        let rho = random_state(rng);
        let out = postselect_map(&cfg, &rho, 0.0, delta)?;
        let direct = rho.conjugate_by(&superposed_unitary(&cfg, delta)?);
        worst = worst.max(trace_distance(&out.state, &direct));
    }
    Ok(Stat::below("post-selection equals superposed unitary", 100, worst, 1e-10))
}

fn interferometer(rng: &mut ChaCha8Rng) -> Result<Stat> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let cfg = random_planar(rng)?;
        let ti = rng.random_range(0.0..3.0);
        let tj = ti + rng.random_range(0.0..2.0 * PI);
        let s = interferometer_signal(&cfg, ti, tj)?;
        let n = normalization_signal(&cfg, ti, tj)?;
        let c = correlator(&cfg, ti, tj, &UnitVector3::Z)?;
        worst = worst
            .max((s.re_cm - 0.25 * (s.t_plus + s.t_minus)).abs())
            .max((s.t_plus / n.n_plus - c).abs());
    }
    Ok(Stat::below("interferometer readout", 50, worst, 1e-10))
}

fn speed_of_evolution(rng: &mut ChaCha8Rng) -> Result<Stat> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let cfg = random_planar(rng)?;
        let t = rng.random_range(0.0..4.0 * PI);
        let p = SoeProfile::new(&cfg)?;
        let h = 1e-5;
        let fd = (p.f(t + h) - p.f(t - h)) / (2.0 * h);
        worst = worst.max(((fd - p.g(t)) / p.g(t)).abs());
    }
    Ok(Stat::below("g(t) against finite differences of f(t)", 100, worst, 1e-5))
}

fn noiseless_models(rng: &mut ChaCha8Rng) -> Result<Stat> {
    let clean = NoiseConfig::new(0.0)?;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let cfg = random_planar(rng)?;
        let t = rng.random_range(0.0..3.0);
        let exact = k3_at(&cfg, t)?.k3;
        worst = worst
            .max((k3_bloch(&cfg, &clean, t)? - exact).abs())
            .max((k3_lindblad(&cfg, &clean, t)? - exact).abs());
    }
    Ok(Stat::below("noiseless Bloch and master-equation K3", 10, worst, 1e-6))
}

fn master_equation(rng: &mut ChaCha8Rng) -> Result<Stat> {
    let noise = NoiseConfig::new(0.25 / PI)?;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let cfg = random_planar(rng)?;
        let rho0 = lgsim::ancilla::ancilla_state(cfg.alpha()).kron(&random_state(rng))?;
        let t = rng.random_range(0.0..5.0);
        let a = evolve_lindblad(&rho0, &cfg, &noise, t)?;
        let b = evolve_lindblad_exact(&rho0, &cfg, &noise, t)?;
        worst = worst.max(a.max_abs_diff(&b));
    }
    Ok(Stat::below("master equation against superoperator exponential", 10, worst, 1e-8))
}

fn composition() -> Result<Vec<Stat>> {
    let (t, tau) = (2.0, 1.0);
    let gap = |alpha: f64| -> Result<f64> {
        let cfg = SuperpositionConfig::planar(alpha, FRAC_PI_2, 1.0)?;
        let whole = superposed_unitary(&cfg, t)?;
        let chained = &superposed_unitary(&cfg, t - tau)? * &superposed_unitary(&cfg, tau)?;
        dist_upto_phase(&whole, &chained)
    };
    Ok(vec![
        Stat {
            name: "composition law broken by superposition",
            samples: 1,
            value: gap(FRAC_PI_8)?,
            threshold: 1e-3,
            above: true,
        },
        Stat::below("composition law without superposition", 1, gap(0.0)?, 1e-12),
    ])
}

pub fn run(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = vec![
        postselection(&mut rng)?,
        interferometer(&mut rng)?,
        speed_of_evolution(&mut rng)?,
        noiseless_models(&mut rng)?,
        master_equation(&mut rng)?,
    ];
    stats.extend(composition()?);

    let mut table = Table::new(&["check", "samples", "value", "threshold", "passed"]);
    table.meta("seed", seed);
    let mut checks = Vec::new();
    for s in &stats {
        table.push(vec![
            s.name.into(),
            s.samples.into(),
            s.value.into(),
            s.threshold.into(),
            s.passed().into(),
        ]);
        checks.push(Check::new(
            s.name,
            s.passed(),
            format!("{:.3e} {} {:.0e}", s.value, if s.above { ">" } else { "<" }, s.threshold),
        ));
    }
    Ok(Outcome { table, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_and_is_deterministic() {
        let a = run(5).unwrap();
        assert!(a.passed(), "{:?}", a.checks);
        assert_eq!(a, run(5).unwrap());
    }
}
