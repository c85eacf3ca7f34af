use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{identity2, proj0, proj1, ComplexMatrix};
use crate::superpose::SuperpositionConfig;

const STARVATION_FLOOR: f64 = 1e-12;

fn check_order(ti: f64, tj: f64) -> Result<f64> {
    if tj < ti {
        return Err(Error::TimeOrder { ti, tj });
    }
    Ok(tj - ti)
}

/// Gate applied when the ancilla is `|0⟩`: `|0⟩⟨0| ⊗ rot(m̂, ωδ) + |1⟩⟨1| ⊗ 𝟙`.
///
/// The `|0⟩` branch is weighted by `cosα` in the ancilla state, so it carries
/// the `m̂` rotation (the `cosα` term of `Ũ`).
pub fn controlled_u_t0(cfg: &SuperpositionConfig, ti: f64, tj: f64) -> Result<ComplexMatrix> {
    let delta = check_order(ti, tj)?;
    Ok(&proj0().kron(&cfg.u1(delta))? + &proj1().kron(&identity2())?)
}

/// Gate applied when the ancilla is `|1⟩`: `|0⟩⟨0| ⊗ 𝟙 + |1⟩⟨1| ⊗ rot(n̂, ωδ)`.
pub fn controlled_u_t1(cfg: &SuperpositionConfig, ti: f64, tj: f64) -> Result<ComplexMatrix> {
    let delta = check_order(ti, tj)?;
    Ok(&proj0().kron(&identity2())? + &proj1().kron(&cfg.u0(delta))?)
}

/// Joint propagator `L = U_T1 · U_T0` on the ancilla ⊗ system pair.
pub fn joint_propagator(cfg: &SuperpositionConfig, ti: f64, tj: f64) -> Result<ComplexMatrix> {
    Ok(&controlled_u_t1(cfg, ti, tj)? * &controlled_u_t0(cfg, ti, tj)?)
}

/// Ancilla preparation `|α⟩ = cosα |0⟩ + sinα |1⟩`.
pub fn ancilla_ket(alpha: f64) -> [Complex64; 2] {
    let (s, c) = alpha.sin_cos();
    [Complex64::new(c, 0.0), Complex64::new(s, 0.0)]
}

pub fn ancilla_state(alpha: f64) -> ComplexMatrix {
    let k = ancilla_ket(alpha);
    ComplexMatrix::outer(&k, &k).expect("2-dimensional outer product")
}

/// `⟨+|_A ρ_AS |+⟩_A`, unnormalized.
pub fn project_ancilla_plus(rho_as: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho_as.dim() != 4 {
        return Err(Error::DimMismatch {
            left: rho_as.dim(),
            right: 4,
        });
    }
    let mut out = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let sum: Complex64 = (0..2)
                .flat_map(|a| (0..2).map(move |b| (a, b)))
                .map(|(a, b)| rho_as.get(2 * a + i, 2 * b + j))
                .sum();
            out.push(sum * 0.5);
        }
    }
    ComplexMatrix::new(2, out)
}

/// Output of the post-selected ancilla channel.
#[derive(Debug, Clone, PartialEq)]
pub struct PostSelected {
    pub state: ComplexMatrix,
    pub probability: f64,
}

/// Prepares the ancilla in `|α⟩`, runs `L`, and keeps the `|+⟩_A` outcome.
///
/// The system state that survives is `U ρ U†` with `U` the normalized
/// superposed unitary, and the success probability `N²/2` does not depend on
/// `ρ`.
pub fn postselect_map(
    cfg: &SuperpositionConfig,
    rho_s: &ComplexMatrix,
    ti: f64,
    tj: f64,
) -> Result<PostSelected> {
    if rho_s.dim() != 2 {
        return Err(Error::DimMismatch {
            left: rho_s.dim(),
            right: 2,
        });
    }
    let joint = ancilla_state(cfg.alpha()).kron(rho_s)?;
    let evolved = joint.conjugate_by(&joint_propagator(cfg, ti, tj)?);
    let kept = project_ancilla_plus(&evolved)?;
    let probability = kept.trace().re;
    if probability < STARVATION_FLOOR {
        return Err(Error::PostSelectionStarved(probability));
    }
    Ok(PostSelected {
        state: kept.scale_real(probability.recip()),
        probability,
    })
}
