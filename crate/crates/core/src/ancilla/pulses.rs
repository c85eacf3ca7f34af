//! Two-qubit pulse-sequence decompositions of the controlled gates, and a grid
//! verifier that compares each sequence product with its target up to global
//! phase.
//!
//! Registers are `control ⊗ system`, where the control is M for the
//! controlled-σz gate and A for the two controlled rotations. Gates are listed
//! in the order they are applied.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{
    dist_upto_phase, identity2, proj0, proj1, rot, sigma_z, ComplexMatrix, UnitVector3,
};

/// Pass threshold for a sequence product against its target.
pub const PULSE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Qubit {
    Control,
    System,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PulseAxis {
    X,
    Y,
    Z,
}

impl PulseAxis {
    fn unit(self) -> UnitVector3 {
        match self {
            PulseAxis::X => UnitVector3::X,
            PulseAxis::Y => UnitVector3::Y,
            PulseAxis::Z => UnitVector3::Z,
        }
    }
}

/// Primitive gate of a pulse sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Pulse {
    /// `exp(−i σ_axis · angle/2)` on one qubit.
    Rotation {
        target: Qubit,
        axis: PulseAxis,
        angle: f64,
    },
    /// Free evolution under the scalar coupling, `exp(−i σz⊗σz · angle/2)`.
    Coupling { angle: f64 },
}

impl Pulse {
    fn rx(target: Qubit, angle: f64) -> Self {
        Pulse::Rotation {
            target,
            axis: PulseAxis::X,
            angle,
        }
    }

    fn ry(target: Qubit, angle: f64) -> Self {
        Pulse::Rotation {
            target,
            axis: PulseAxis::Y,
            angle,
        }
    }

    fn rz(target: Qubit, angle: f64) -> Self {
        Pulse::Rotation {
            target,
            axis: PulseAxis::Z,
            angle,
        }
    }

    pub fn matrix(&self) -> Result<ComplexMatrix> {
        match *self {
            Pulse::Rotation {
                target,
                axis,
                angle,
            } => {
                let r = rot(&axis.unit(), angle);
                match target {
                    Qubit::Control => r.kron(&identity2()),
                    Qubit::System => identity2().kron(&r),
                }
            }
            Pulse::Coupling { angle } => {
                // σz⊗σz is diagonal with entries (1, −1, −1, 1).
                let (s, c) = (0.5 * angle).sin_cos();
                let plus = num_complex::Complex64::new(c, -s);
                let minus = plus.conj();
                ComplexMatrix::diag(&[plus, minus, minus, plus])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PulseSequence {
    pub name: String,
    pub pulses: Vec<Pulse>,
}

impl PulseSequence {
    /// Product of the pulses, last-applied on the left.
    pub fn product(&self) -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::identity(4)?;
        for p in &self.pulses {
            acc = &p.matrix()? * &acc;
        }
        Ok(acc)
    }
}

/// `𝟙 ⊗ |0⟩⟨0| + σz ⊗ |1⟩⟨1|` written in control ⊗ system order.
pub fn controlled_sigma_z_target() -> Result<ComplexMatrix> {
    Ok(&proj0().kron(&identity2())? + &proj1().kron(&sigma_z())?)
}

/// Controlled-σz from a coupling evolution and system rotations.
///
/// The bare sequence `R_y(π/2) R_x(π/2) R_y(−π/2) · ZZ(π/2)` equals the target
/// only up to `diag(1, i)` on the control, so a final `R_z(−π/2)` on the
/// control closes the gap.
pub fn controlled_sigma_z_sequence() -> PulseSequence {
    PulseSequence {
        name: "controlled_sigma_z".into(),
        pulses: vec![
            Pulse::Coupling { angle: FRAC_PI_2 },
            Pulse::ry(Qubit::System, -FRAC_PI_2),
            Pulse::rx(Qubit::System, FRAC_PI_2),
            Pulse::ry(Qubit::System, FRAC_PI_2),
            Pulse::rz(Qubit::Control, -FRAC_PI_2),
        ],
    }
}

/// `|0⟩`-controlled x-rotation by `ωt`:
/// `e^{−iσx ωt/4} e^{−iσy π/4} e^{−iσzσz ωt/4} e^{iσy π/4}`.
pub fn u_t0_sequence(omega_t: f64) -> PulseSequence {
    PulseSequence {
        name: "u_t0".into(),
        pulses: vec![
            Pulse::ry(Qubit::System, -FRAC_PI_2),
            Pulse::Coupling {
                angle: 0.5 * omega_t,
            },
            Pulse::ry(Qubit::System, FRAC_PI_2),
            Pulse::rx(Qubit::System, 0.5 * omega_t),
        ],
    }
}

/// `|1⟩`-controlled rotation by `ωt` about `φ̂`, using x/y pulses only:
/// `e^{iσx π/4} e^{−iσy(π−φ)/2} e^{iσx(ωt−π)/4} e^{−iσy π/4} e^{−iσzσz ωt/4}
///  e^{iσx(π−φ)/2} e^{iσy π/4}`.
pub fn u_t1_sequence(phi: f64, omega_t: f64) -> PulseSequence {
    let phi_rest = PI - phi;
    PulseSequence {
        name: "u_t1".into(),
        pulses: vec![
            Pulse::ry(Qubit::System, -FRAC_PI_2),
            Pulse::rx(Qubit::System, -phi_rest),
            Pulse::Coupling {
                angle: 0.5 * omega_t,
            },
            Pulse::ry(Qubit::System, FRAC_PI_2),
            Pulse::rx(Qubit::System, -0.5 * (omega_t - PI)),
            Pulse::ry(Qubit::System, phi_rest),
            Pulse::rx(Qubit::System, -FRAC_PI_2),
        ],
    }
}

/// A sequence paired with the gate it should implement.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseCheck {
    pub sequence: PulseSequence,
    pub target: ComplexMatrix,
}

impl PulseCheck {
    pub fn distance(&self) -> Result<f64> {
        dist_upto_phase(&self.sequence.product()?, &self.target)
    }
}

/// `|0⟩⟨0| ⊗ rot(x̂, ωt) + |1⟩⟨1| ⊗ 𝟙`
pub fn u_t0_target(omega_t: f64) -> Result<ComplexMatrix> {
    Ok(&proj0().kron(&rot(&UnitVector3::X, omega_t))? + &proj1().kron(&identity2())?)
}

/// `|0⟩⟨0| ⊗ 𝟙 + |1⟩⟨1| ⊗ rot(φ̂, ωt)`. Any `φ` is allowed, including `π`.
pub fn u_t1_target(phi: f64, omega_t: f64) -> Result<ComplexMatrix> {
    Ok(&proj0().kron(&identity2())? + &proj1().kron(&rot(&UnitVector3::equatorial(phi), omega_t))?)
}

/// The three sequences with their targets at one `(φ, ωt)` setting.
pub fn build_pulse_library(phi: f64, omega_t: f64) -> Result<Vec<PulseCheck>> {
    Ok(vec![
        PulseCheck {
            sequence: controlled_sigma_z_sequence(),
            target: controlled_sigma_z_target()?,
        },
        PulseCheck {
            sequence: u_t0_sequence(omega_t),
            target: u_t0_target(omega_t)?,
        },
        PulseCheck {
            sequence: u_t1_sequence(phi, omega_t),
            target: u_t1_target(phi, omega_t)?,
        },
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRow {
    pub sequence: String,
    pub phi: f64,
    pub omega_t: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceSummary {
    pub sequence: String,
    pub max_distance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub rows: Vec<VerificationRow>,
    pub summary: Vec<SequenceSummary>,
    pub passed: bool,
}

/// Runs the pulse library over every `(φ, ωt)` point.
pub fn verify_pulse_sequences(points: &[(f64, f64)]) -> Result<VerificationReport> {
    let per_point: Vec<Vec<VerificationRow>> = points
        .par_iter()
        .map(|&(phi, omega_t)| {
            build_pulse_library(phi, omega_t)?
                .into_iter()
                .map(|check| {
                    Ok(VerificationRow {
                        distance: check.distance()?,
                        sequence: check.sequence.name,
                        phi,
                        omega_t,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<VerificationRow> = per_point.into_iter().flatten().collect();

    let mut summary: Vec<SequenceSummary> = Vec::new();
    for row in &rows {
        match summary.iter_mut().find(|s| s.sequence == row.sequence) {
            Some(s) => s.max_distance = s.max_distance.max(row.distance),
            None => summary.push(SequenceSummary {
                sequence: row.sequence.clone(),
                max_distance: row.distance,
                passed: true,
            }),
        }
    }
    for s in &mut summary {
        s.passed = s.max_distance < PULSE_TOL;
    }
    let passed = summary.iter().all(|s| s.passed);
    Ok(VerificationReport {
        tolerance: PULSE_TOL,
        rows,
        summary,
        passed,
    })
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<20} {:>14}  status", "sequence", "max distance")?;
        for s in &self.summary {
            writeln!(
                f,
                "{:<20} {:>14.3e}  {}",
                s.sequence,
                s.max_distance,
                if s.passed { "pass" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "{} grid rows, tolerance {:.0e}: {}",
            self.rows.len(),
            self.tolerance,
            if self.passed { "pass" } else { "FAIL" }
        )
    }
}
