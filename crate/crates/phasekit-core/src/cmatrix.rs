//! Dense square complex matrices and state vectors over the truncated
//! number basis.
//!
//! The dimensions in play stay in the hundreds, so storage is a plain
//! row-major `Vec` and products are naive triple loops; that is both
//! fast enough and easy to audit.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{CoreError, Result};
use crate::C64;

/// Dense square matrix of complex doubles, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Zero matrix of side `dim`.
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity of side `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build entrywise from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for n in 0..dim {
            for m in 0..dim {
                data.push(f(n, m));
            }
        }
        ComplexMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |n, m| self[(m, n)].conj())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != rhs.dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                let lhs_row = i * d;
                let rhs_row = k * d;
                for j in 0..d {
                    out.data[lhs_row + j] += aik * rhs.data[rhs_row + j];
                }
            }
        }
        Ok(out)
    }

    /// Entrywise difference `self - rhs`.
    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != rhs.dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= *b;
        }
        Ok(out)
    }

    /// Entrywise sum `self + rhs`.
    pub fn add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != rhs.dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += *b;
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: C64) -> ComplexMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest modulus of `a[n][m] - conj(a[m][n])` over all entries.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for n in 0..self.dim {
            for m in n..self.dim {
                let dev = (self[(n, m)] - self[(m, n)].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.dim != v.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (i, slot) in out.iter_mut().enumerate() {
            let row = i * self.dim;
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.dim {
                acc += self.data[row + j] * v.coeffs()[j];
            }
            *slot = acc;
        }
        Ok(StateVector::from_coeffs(out))
    }

    /// Sesquilinear form `<v, A v>`.
    pub fn quad_form(&self, v: &StateVector) -> Result<C64> {
        let av = self.apply(v)?;
        Ok(v.inner(&av))
    }

    /// Leading `d x d` block.
    pub fn leading_block(&self, d: usize) -> Result<ComplexMatrix> {
        if d > self.dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim,
                got: d,
            });
        }
        Ok(Self::from_fn(d, |n, m| self[(n, m)]))
    }

    /// Column `j` as a state vector.
    pub fn column(&self, j: usize) -> StateVector {
        StateVector::from_coeffs((0..self.dim).map(|i| self[(i, j)]).collect())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (n, m): (usize, usize)) -> &C64 {
        &self.data[n * self.dim + m]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (n, m): (usize, usize)) -> &mut C64 {
        &mut self.data[n * self.dim + m]
    }
}

/// Vector in the truncated number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    coeffs: Vec<C64>,
}

impl StateVector {
    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        StateVector { coeffs }
    }

    /// Basis vector `|n>` in dimension `dim`.
    pub fn basis(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(CoreError::IndexOutOfRange { index: n, dim });
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); dim];
        coeffs[n] = C64::new(1.0, 0.0);
        Ok(StateVector { coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rescaled copy with unit norm.
    pub fn normalized(&self) -> Result<StateVector> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(CoreError::NotUnit { norm: n });
        }
        let mut out = self.clone();
        for z in out.coeffs.iter_mut() {
            *z /= n;
        }
        Ok(out)
    }
}
