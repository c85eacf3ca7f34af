//! Full three-qubit simulation of the interferometric correlator readout.
//!
//! Register order is M ⊗ A ⊗ S. The gate list is:
//!
//! 1. Hadamard on M (M starts in `|0⟩`), `R_y(2α)` on A (A starts in `|0⟩`),
//!    S starts maximally mixed;
//! 2. controlled-σz from M onto S (time `ti`);
//! 3. `L = U_T1 · U_T0` on A ⊗ S for the interval `tj − ti`;
//! 4. controlled-σz from M onto S (time `tj`);
//! 5. Hadamard on A, so that keeping `|+⟩_A` becomes keeping `|0⟩_A`.
//!
//! M's coherence `𝒞 = (⟨σx⟩ + i⟨σy⟩)/2` is read at the end. Projecting A onto
//! `|0⟩` or `|1⟩` before tracing separates the two contributions `T+` and `T−`
//! (the NMR experiment separates them spectrally).

use num_complex::Complex64;
use serde::Serialize;

use super::channel::joint_propagator;
use crate::error::{Error, Result};
use crate::linalg::{
    hadamard, identity2, kron3, proj0, proj1, rot, sigma_x, sigma_z, ComplexMatrix, UnitVector3,
};
use crate::superpose::SuperpositionConfig;

/// One run of the readout circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AncillaCircuit {
    pub cfg: SuperpositionConfig,
    pub ti: f64,
    pub tj: f64,
    /// Whether the two controlled-σz gates are applied. Switching them off
    /// turns the correlator run into the normalization run.
    pub include_q_controls: bool,
}

/// Signals extracted from M for the two ancilla outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Readout {
    /// Contribution of the `|+⟩_A` outcome.
    pub plus: f64,
    /// Contribution of the `|−⟩_A` outcome.
    pub minus: f64,
    /// `Re 𝒞_M` summed over both outcomes; equals `¼ (plus + minus)`.
    pub re_cm: f64,
}

/// Readout with the controlled-σz gates on: `T±`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterferometerSignal {
    pub t_plus: f64,
    pub t_minus: f64,
    pub re_cm: f64,
}

/// Readout with the controlled-σz gates off: `N²` and its `−` partner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationSignal {
    pub n_plus: f64,
    pub n_minus: f64,
    pub re_cm: f64,
}

fn controlled_sigma_z() -> Result<ComplexMatrix> {
    Ok(&kron3(&proj0(), &identity2(), &identity2())? + &kron3(&proj1(), &identity2(), &sigma_z())?)
}

fn reduce_to_measurement(rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            out.push((0..4).map(|k| rho.get(4 * i + k, 4 * j + k)).sum::<Complex64>());
        }
    }
    ComplexMatrix::new(2, out).expect("2x2 reduced state")
}

impl AncillaCircuit {
    pub fn new(cfg: SuperpositionConfig, ti: f64, tj: f64, include_q_controls: bool) -> Result<Self> {
        if tj < ti {
            return Err(Error::TimeOrder { ti, tj });
        }
        Ok(Self {
            cfg,
            ti,
            tj,
            include_q_controls,
        })
    }

    /// Final 8×8 register state before any ancilla projection.
    pub fn final_state(&self) -> Result<ComplexMatrix> {
        let id = identity2();
        let mut rho = kron3(&proj0(), &proj0(), &id.scale_real(0.5))?;
        let prep = kron3(
            &hadamard(),
            &rot(&UnitVector3::Y, 2.0 * self.cfg.alpha()),
            &id,
        )?;
        rho = rho.conjugate_by(&prep);
        let cz = controlled_sigma_z()?;
        if self.include_q_controls {
            rho = rho.conjugate_by(&cz);
        }
        let l = id.kron(&joint_propagator(&self.cfg, self.ti, self.tj)?)?;
        rho = rho.conjugate_by(&l);
        if self.include_q_controls {
            rho = rho.conjugate_by(&cz);
        }
        Ok(rho.conjugate_by(&kron3(&id, &hadamard(), &id)?))
    }

    pub fn simulate(&self) -> Result<Readout> {
        let rho = self.final_state()?;
        let id = identity2();
        let sx = sigma_x();
        let branch = |proj: &ComplexMatrix| -> Result<f64> {
            let p = kron3(&id, proj, &id)?;
            let kept = &(&p * &rho) * &p;
            Ok((&sx * &reduce_to_measurement(&kept)).trace().re)
        };
        // ⟨σx⟩_M per branch is T±/2.
        let plus = 2.0 * branch(&proj0())?;
        let minus = 2.0 * branch(&proj1())?;
        let re_cm = 0.5 * (&sx * &reduce_to_measurement(&rho)).trace().re;
        Ok(Readout { plus, minus, re_cm })
    }
}

/// Correlator run: `T± = tr[σz Ũ± σz ½ Ũ±†]` and `Re 𝒞_M = ¼ (T+ + T−)`.
pub fn interferometer_signal(cfg: &SuperpositionConfig, ti: f64, tj: f64) -> Result<InterferometerSignal> {
    let r = AncillaCircuit::new(*cfg, ti, tj, true)?.simulate()?;
    Ok(InterferometerSignal {
        t_plus: r.plus,
        t_minus: r.minus,
        re_cm: r.re_cm,
    })
}

/// Normalization run: `N±² = ½ tr[Ũ± Ũ±†]`.
pub fn normalization_signal(cfg: &SuperpositionConfig, ti: f64, tj: f64) -> Result<NormalizationSignal> {
    let r = AncillaCircuit::new(*cfg, ti, tj, false)?.simulate()?;
    Ok(NormalizationSignal {
        n_plus: r.plus,
        n_minus: r.minus,
        re_cm: r.re_cm,
    })
}

/// `Cij` reconstructed from the two runs, `T+ / N²`.
pub fn reconstructed_correlator(cfg: &SuperpositionConfig, ti: f64, tj: f64) -> Result<f64> {
    let t = interferometer_signal(cfg, ti, tj)?;
    let n = normalization_signal(cfg, ti, tj)?;
    if n.n_plus < 1e-12 {
        return Err(Error::PostSelectionStarved(n.n_plus));
    }
    Ok(t.t_plus / n.n_plus)
}
