use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ode::{rk4_integrate, AdaptiveIntegrator};
use super::{BranchNormalization, NoiseConfig, Solver};
use crate::ancilla::{ancilla_state, project_ancilla_plus};
use crate::error::{Error, Result};
use crate::linalg::{identity2, pauli, proj0, proj1, sigma_z, to_nalgebra, ComplexMatrix};
use crate::superpose::SuperpositionConfig;

const STARVATION_FLOOR: f64 = 1e-12;

/// `H_AS = |0⟩⟨0| ⊗ ω σm/2 + |1⟩⟨1| ⊗ ω σn/2` on ancilla ⊗ system.
pub fn joint_hamiltonian(cfg: &SuperpositionConfig) -> ComplexMatrix {
    let half = 0.5 * cfg.omega();
    let m = proj0().kron(&pauli(&cfg.m_axis())).expect("4x4");
    let n = proj1().kron(&pauli(&cfg.n_axis())).expect("4x4");
    (&m + &n).scale_real(half)
}

/// Time-independent dephasing generator on the ancilla ⊗ system pair.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    h: ComplexMatrix,
    z_a: ComplexMatrix,
    z_s: ComplexMatrix,
    gamma: f64,
}

impl LindbladGenerator {
    pub fn new(cfg: &SuperpositionConfig, noise: &NoiseConfig) -> Self {
        Self {
            h: joint_hamiltonian(cfg),
            z_a: sigma_z().kron(&identity2()).expect("4x4"),
            z_s: identity2().kron(&sigma_z()).expect("4x4"),
            gamma: noise.gamma,
        }
    }

    /// `−i[H, ρ] + γ/2 Σ_{j=A,S} (σz^j ρ σz^j − ρ)`
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let unitary = self.h.commutator(rho).scale(Complex64::new(0.0, -1.0));
        if self.gamma == 0.0 {
            return unitary;
        }
        let za = rho.conjugate_by(&self.z_a);
        let zs = rho.conjugate_by(&self.z_s);
        let dephase = &(&za + &zs) - &rho.scale_real(2.0);
        &unitary + &dephase.scale_real(0.5 * self.gamma)
    }

    /// 16×16 matrix of the generator acting on row-major `vec ρ`, using
    /// `vec(AρB) = (A ⊗ Bᵀ) vec ρ`.
    pub fn superoperator(&self) -> DMatrix<Complex64> {
        let id = DMatrix::<Complex64>::identity(4, 4);
        let h = to_nalgebra(&self.h);
        let za = to_nalgebra(&self.z_a);
        let zs = to_nalgebra(&self.z_s);
        let minus_i = Complex64::new(0.0, -1.0);
        let g = Complex64::new(0.5 * self.gamma, 0.0);
        (h.kronecker(&id) - id.kronecker(&h.transpose())) * minus_i
            + (za.kronecker(&za.transpose()) + zs.kronecker(&zs.transpose())
                - DMatrix::<Complex64>::identity(16, 16) * Complex64::new(2.0, 0.0))
                * g
    }
}

pub fn lindblad_rhs(rho: &ComplexMatrix, cfg: &SuperpositionConfig, noise: &NoiseConfig) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    Ok(LindbladGenerator::new(cfg, noise).apply(rho))
}

/// RK4 step used when no explicit solver is requested.
pub(crate) fn default_step(cfg: &SuperpositionConfig, noise: &NoiseConfig) -> f64 {
    let h = 0.01 / cfg.omega();
    if noise.gamma > 0.0 {
        h.min(0.01 / noise.gamma)
    } else {
        h
    }
}

pub(crate) fn propagate(
    gen: &LindbladGenerator,
    cfg: &SuperpositionConfig,
    noise: &NoiseConfig,
    rho: &ComplexMatrix,
    span: f64,
) -> Result<ComplexMatrix> {
    if span <= 0.0 {
        return Ok(rho.clone());
    }
    let f = |_t: f64, r: &ComplexMatrix| gen.apply(r);
    match noise.solver {
        Solver::Auto => rk4_integrate(&f, 0.0, rho, span, default_step(cfg, noise)),
        Solver::Rk4Fixed { step } => rk4_integrate(&f, 0.0, rho, span, step),
        Solver::Rk45Adaptive { tolerance } => {
            let mut integ = AdaptiveIntegrator::new(f, 0.0, rho.clone(), tolerance, span);
            integ.advance_to(span)?;
            let (_, last) = integ.trajectory().last();
            Ok(last.clone())
        }
    }
}

fn check_state(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    Ok(())
}

/// Evolves `ρ_AS` for a time `t` with the configured solver.
pub fn evolve_lindblad(
    rho0: &ComplexMatrix,
    cfg: &SuperpositionConfig,
    noise: &NoiseConfig,
    t: f64,
) -> Result<ComplexMatrix> {
    check_state(rho0)?;
    if t < 0.0 {
        return Err(Error::InvalidConfig(format!("t = {t} is negative")));
    }
    propagate(&LindbladGenerator::new(cfg, noise), cfg, noise, rho0, t)
}

/// Same evolution through the exponential of the 16×16 superoperator.
pub fn evolve_lindblad_exact(
    rho0: &ComplexMatrix,
    cfg: &SuperpositionConfig,
    noise: &NoiseConfig,
    t: f64,
) -> Result<ComplexMatrix> {
    check_state(rho0)?;
    let l = LindbladGenerator::new(cfg, noise).superoperator() * Complex64::new(t, 0.0);
    let v = nalgebra::DVector::from_column_slice(rho0.entries());
    let out = l.exp() * v;
    ComplexMatrix::new(4, out.iter().copied().collect())
}

/// Initial joint states `|α⟩⟨α| ⊗ Π_q` for `q = +1, −1`.
pub(crate) fn branch_states(alpha: f64) -> Result<[ComplexMatrix; 2]> {
    let a = ancilla_state(alpha);
    Ok([a.kron(&proj0())?, a.kron(&proj1())?])
}

/// Combines the two post-selected branches into `Cij`.
pub(crate) fn combine_branches(evolved: &[ComplexMatrix; 2], normalization: BranchNormalization) -> Result<f64> {
    let z = sigma_z();
    let mut probs = [0.0; 2];
    let mut signals = [0.0; 2];
    for (k, rho) in evolved.iter().enumerate() {
        let kept = project_ancilla_plus(rho)?;
        probs[k] = kept.trace().re;
        if probs[k] < STARVATION_FLOOR {
            return Err(Error::PostSelectionStarved(probs[k]));
        }
        signals[k] = (&z * &kept).trace().re;
    }
    Ok(match normalization {
        BranchNormalization::PerBranch => 0.5 * (signals[0] / probs[0] - signals[1] / probs[1]),
        BranchNormalization::Global => (signals[0] - signals[1]) / (probs[0] + probs[1]),
    })
}

/// `Cij` with the post-selected dephasing channel in place of the unitary.
pub fn noisy_correlator(cfg: &SuperpositionConfig, noise: &NoiseConfig, ti: f64, tj: f64) -> Result<f64> {
    if tj < ti {
        return Err(Error::TimeOrder { ti, tj });
    }
    let gen = LindbladGenerator::new(cfg, noise);
    let [p, m] = branch_states(cfg.alpha())?;
    let evolved = [
        propagate(&gen, cfg, noise, &p, tj - ti)?,
        propagate(&gen, cfg, noise, &m, tj - ti)?,
    ];
    combine_branches(&evolved, noise.normalization)
}

/// `K3(t) = 2 C(0, t) − C(0, 2t)` from the Lindblad path.
pub fn k3_lindblad(cfg: &SuperpositionConfig, noise: &NoiseConfig, t: f64) -> Result<f64> {
    Ok(2.0 * noisy_correlator(cfg, noise, 0.0, t)? - noisy_correlator(cfg, noise, 0.0, 2.0 * t)?)
}
