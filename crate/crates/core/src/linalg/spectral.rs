use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

pub(crate) fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.entries())
}

fn from_nalgebra(m: &DMatrix<Complex64>) -> Result<ComplexMatrix> {
    let n = m.nrows();
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| m[(i, j)])
        .collect();
    ComplexMatrix::new(n, data)
}

/// Eigenvalues of a hermitian matrix (unsorted).
///
/// Only the hermitian part `(A + A†)/2` is looked at.
pub fn eigenvalues_hermitian(m: &ComplexMatrix) -> Vec<f64> {
    let h = to_nalgebra(&(m + &m.dagger()).scale_real(0.5));
    SymmetricEigen::new(h).eigenvalues.iter().copied().collect()
}

/// Eigen-decomposition `H = V diag(λ) V†` of a hermitian matrix.
pub fn eigen_hermitian(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_hermitian(1e-10) {
        return Err(Error::InvalidConfig("matrix is not hermitian".into()));
    }
    let eig = SymmetricEigen::new(to_nalgebra(m));
    let vectors = from_nalgebra(&eig.eigenvectors)?;
    Ok((eig.eigenvalues.iter().copied().collect(), vectors))
}

/// `exp(i·scale·H)` for hermitian `H`, computed exactly through the spectral
/// decomposition.
pub fn expm_i_hermitian(h: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    let (values, vectors) = eigen_hermitian(h)?;
    let phases: Vec<Complex64> = values
        .iter()
        .map(|&lambda| Complex64::from_polar(1.0, scale * lambda))
        .collect();
    let d = ComplexMatrix::diag(&phases)?;
    Ok(&(&vectors * &d) * &vectors.dagger())
}
