//! Pauli algebra and SU(2) rotations.

use num_complex::Complex64;

use super::{ComplexMatrix, UnitVector3};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::from_2x2(ONE, ZERO, ZERO, ONE)
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_2x2(ZERO, ONE, ONE, ZERO)
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_2x2(ZERO, -I, I, ZERO)
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_2x2(ONE, ZERO, ZERO, -ONE)
}

pub fn hadamard() -> ComplexMatrix {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ComplexMatrix::from_2x2(h, h, h, -h)
}

/// `|0⟩⟨0|`
pub fn proj0() -> ComplexMatrix {
    ComplexMatrix::from_2x2(ONE, ZERO, ZERO, ZERO)
}

/// `|1⟩⟨1|`
pub fn proj1() -> ComplexMatrix {
    ComplexMatrix::from_2x2(ZERO, ZERO, ZERO, ONE)
}

/// Pauli operator along `axis`: `n_x σx + n_y σy + n_z σz`.
pub fn pauli(axis: &UnitVector3) -> ComplexMatrix {
    let (x, y, z) = (axis.x(), axis.y(), axis.z());
    ComplexMatrix::from_2x2(
        Complex64::new(z, 0.0),
        Complex64::new(x, -y),
        Complex64::new(x, y),
        Complex64::new(-z, 0.0),
    )
}

/// `exp(−i σ_axis · angle/2) = cos(angle/2) 𝟙 − i sin(angle/2) σ_axis`.
pub fn rot(axis: &UnitVector3, angle: f64) -> ComplexMatrix {
    let (s, c) = (0.5 * angle).sin_cos();
    let (x, y, z) = (axis.x(), axis.y(), axis.z());
    // −i s (x σx + y σy + z σz) added to c 𝟙
    ComplexMatrix::from_2x2(
        Complex64::new(c, -s * z),
        Complex64::new(-s * y, -s * x),
        Complex64::new(s * y, -s * x),
        Complex64::new(c, s * z),
    )
}

/// `1 − |tr(A†B)| / dim`: zero iff `A = e^{iχ} B` for unitaries.
pub fn dist_upto_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let overlap: Complex64 = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok((1.0 - overlap.norm() / a.dim() as f64).max(0.0))
}
