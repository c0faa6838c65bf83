//! Dense complex vectors and square matrices sized for few-level quantum systems.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use super::NumericsError;

pub type ComplexScalar = Complex64;

pub const ZERO: ComplexScalar = Complex64::new(0.0, 0.0);
pub const ONE: ComplexScalar = Complex64::new(1.0, 0.0);
pub const I: ComplexScalar = Complex64::new(0.0, 1.0);

/// Complex column vector of fixed dimension.
#[derive(Clone, PartialEq)]
pub struct CVector {
    entries: Vec<ComplexScalar>,
}

impl CVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![ZERO; dim],
        }
    }

    /// Unit vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = ONE;
        v
    }

    pub fn from_vec(entries: Vec<ComplexScalar>) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComplexScalar> {
        self.entries.iter()
    }

    /// Inner product `⟨self|other⟩`, conjugating the left argument.
    pub fn inner(&self, other: &CVector) -> Result<ComplexScalar, NumericsError> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: ComplexScalar) -> CVector {
        CVector::from_vec(self.entries.iter().map(|z| z * factor).collect())
    }

    /// `self += alpha * x`
    pub fn axpy(&mut self, alpha: ComplexScalar, x: &CVector) {
        debug_assert_eq!(self.dim(), x.dim());
        for (s, xi) in self.entries.iter_mut().zip(&x.entries) {
            *s += alpha * xi;
        }
    }

    /// Outer product `|self⟩⟨other|`.
    pub fn outer(&self, other: &CVector) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.entries[i] * other.entries[j].conj();
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for CVector {
    type Output = ComplexScalar;
    fn index(&self, i: usize) -> &ComplexScalar {
        &self.entries[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut ComplexScalar {
        &mut self.entries[i]
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<ComplexScalar>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[ComplexScalar]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_rows(dim: usize, entries: Vec<ComplexScalar>) -> Result<Self, NumericsError> {
        if entries.len() != dim * dim {
            return Err(NumericsError::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    /// `|row⟩⟨col|` in dimension `dim`.
    pub fn ket_bra(dim: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(row, col)] = ONE;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    pub fn scale(&self, factor: ComplexScalar) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix, NumericsError> {
        check_dims(self.dim, other.dim)?;
        Ok(CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix, NumericsError> {
        check_dims(self.dim, other.dim)?;
        Ok(CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `self += alpha * x`
    pub fn axpy(&mut self, alpha: ComplexScalar, x: &CMatrix) {
        debug_assert_eq!(self.dim, x.dim);
        for (s, xi) in self.data.iter_mut().zip(&x.data) {
            *s += alpha * xi;
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix, NumericsError> {
        matmul(self, other)
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector, NumericsError> {
        check_dims(self.dim, v.dim())?;
        let n = self.dim;
        let out = (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v.iter())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(CVector::from_vec(out))
    }

    /// `⟨v|self|v⟩`
    pub fn expectation(&self, v: &CVector) -> Result<ComplexScalar, NumericsError> {
        v.inner(&self.apply(v)?)
    }

    pub fn dagger(&self) -> CMatrix {
        dagger(self)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation between the matrix and its adjoint.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Nonzero entries as `(row, col, value)` triplets, row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, ComplexScalar)> {
        let n = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(k, z)| (k / n, k % n, *z))
            .collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = ComplexScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn check_dims(left: usize, right: usize) -> Result<(), NumericsError> {
    if left == right {
        Ok(())
    } else {
        Err(NumericsError::DimensionMismatch { left, right })
    }
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, NumericsError> {
    check_dims(a.dim, b.dim)?;
    let n = a.dim;
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a.data[i * n + k];
            if aik == ZERO {
                continue;
            }
            let row_b = &b.data[k * n..(k + 1) * n];
            let row_out = &mut out.data[i * n..(i + 1) * n];
            for (o, bkj) in row_out.iter_mut().zip(row_b) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn dagger(m: &CMatrix) -> CMatrix {
    let n = m.dim;
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(j, i)] = m[(i, j)].conj();
        }
    }
    out
}

/// Kronecker product: block `(i, j)` of the result is `a[i][j] * b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = CMatrix::zeros(n);
    for ia in 0..na {
        for ja in 0..na {
            let aij = a[(ia, ja)];
            if aij == ZERO {
                continue;
            }
            for ib in 0..nb {
                for jb in 0..nb {
                    out[(ia * nb + ib, ja * nb + jb)] = aij * b[(ib, jb)];
                }
            }
        }
    }
    out
}
