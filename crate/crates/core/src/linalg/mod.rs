//! Dense complex linear algebra for 2-, 4- and 8-dimensional registers.
//!
//! Everything here is value-semantic: matrices are built once and never mutated
//! through shared references, so they can be sent freely across threads.

mod matrix;
mod spectral;
mod su2;
mod vector;

pub use matrix::{ComplexMatrix, DEFAULT_TOL};
pub use spectral::{eigen_hermitian, eigenvalues_hermitian, expm_i_hermitian};
pub(crate) use spectral::to_nalgebra;
pub use su2::{
    dist_upto_phase, hadamard, identity2, pauli, proj0, proj1, rot, sigma_x, sigma_y, sigma_z,
};
pub use vector::UnitVector3;

/// Kronecker product of three single-qubit operators in M ⊗ A ⊗ S order.
pub fn kron3(m: &ComplexMatrix, a: &ComplexMatrix, s: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    m.kron(&a.kron(s)?)
}
