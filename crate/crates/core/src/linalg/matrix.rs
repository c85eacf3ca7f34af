use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for the structural predicates.
pub const DEFAULT_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex square matrix of dimension 2, 4 or 8, stored row-major.
///
/// Multi-qubit operators follow a single ordering throughout the crate:
/// measurement qubit ⊗ ancilla ⊗ system (M ⊗ A ⊗ S). The leftmost factor of a
/// Kronecker product is the most significant index bit.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        other => Err(Error::DimError(other)),
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimMismatch {
                left: data.len(),
                right: dim * dim,
            });
        }
        Ok(Self { dim, data })
    }

    /// 2×2 matrix from its four entries `[[a, b], [c, d]]`.
    pub fn from_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self {
            dim: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        Ok(m)
    }

    pub fn diag(entries: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(entries.len())?;
        let dim = m.dim;
        for (i, &v) in entries.iter().enumerate() {
            m.data[i * dim + i] = v;
        }
        Ok(m)
    }

    /// Projector `|v⟩⟨v|` onto a (not necessarily normalized) vector.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Result<Self> {
        if ket.len() != bra.len() {
            return Err(Error::DimMismatch {
                left: ket.len(),
                right: bra.len(),
            });
        }
        let mut m = Self::zeros(ket.len())?;
        let dim = m.dim;
        for (i, k) in ket.iter().enumerate() {
            for (j, b) in bra.iter().enumerate() {
                m.data[i * dim + j] = k * b.conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.matmul_unchecked(other))
    }

    fn matmul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (out, &b) in data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *out += a * b;
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { dim: n, data }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// `A·B·A†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Self {
        unitary.matmul_unchecked(self).matmul_unchecked(&unitary.dagger())
    }

    /// Commutator `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Tensor product `self ⊗ other`; the result must have dimension 4 or 8.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let n = self.dim * other.dim;
        if n != 4 && n != 8 {
            return Err(Error::DimError(n));
        }
        let (p, q) = (self.dim, other.dim);
        let mut data = vec![ZERO; n * n];
        for i in 0..p {
            for j in 0..p {
                let a = self.data[i * p + j];
                for k in 0..q {
                    for l in 0..q {
                        data[(i * q + k) * n + (j * q + l)] = a * other.data[k * q + l];
                    }
                }
            }
        }
        Ok(Self { dim: n, data })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Largest entry-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.zip_with(other, |a, b| a - b)
            .data
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let id = Self::identity(self.dim).expect("dimension already validated");
        (self * &self.dagger()).max_abs_diff(&id) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Hermitian, unit trace and no eigenvalue below `-tol`.
    pub fn is_density_matrix(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return false;
        }
        super::eigenvalues_hermitian(self)
            .iter()
            .all(|&lambda| lambda >= -tol)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let v = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        self.matmul_unchecked(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}
