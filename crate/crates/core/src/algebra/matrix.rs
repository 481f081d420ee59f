use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// A vector in `C^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVector(pub Vec<C64>);

impl ComplexVector {
    pub fn zeros(d: usize) -> Self {
        Self(vec![C64::new(0.0, 0.0); d])
    }

    /// The unit vector `e_{k+1}` (0-based `k`).
    pub fn basis(d: usize, k: usize) -> Self {
        let mut v = Self::zeros(d);
        v.0[k] = C64::new(1.0, 0.0);
        v
    }

    pub fn from_real(x: &[f64]) -> Self {
        Self(x.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Bilinear pairing `⟨self, other⟩`.
    pub fn dot(&self, other: &Self) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `ξ² = ⟨ξ,ξ⟩` (complex, not the modulus).
    pub fn square(&self) -> C64 {
        self.dot(self)
    }

    /// Euclidean norm `|ξ| = (Σ|ξ_j|²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, a| m.max(a.norm()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.iter().map(|a| a * s).collect())
    }

    /// `(ξ₂, …, ξ_d)`.
    pub fn tail(&self) -> &[C64] {
        &self.0[1..]
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for &ComplexVector {
    type Output = ComplexVector;
    fn add(self, rhs: &ComplexVector) -> ComplexVector {
        ComplexVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ComplexVector {
    type Output = ComplexVector;
    fn sub(self, rhs: &ComplexVector) -> ComplexVector {
        ComplexVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// A square complex matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| format!("{:.6e}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// `E_{kk} = e_k ⊗ e_k` (0-based `k`).
    pub fn unit_projector(dim: usize, k: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(k, k)] = C64::new(1.0, 0.0);
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&a| C64::new(a, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        debug_assert_eq!(v.dim(), self.dim);
        ComplexVector((0..self.dim).map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum()).collect())
    }

    /// Max-absolute-entry norm.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.norm()))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Embeds `self` in the top-left corner of a `dim x dim` zero matrix (the `~` operation).
    pub fn embed(&self, dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..self.dim.min(dim) {
            for j in 0..self.dim.min(dim) {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self[(i, j)])
    }

    pub fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    /// Determinant by LU factorization (generic path).
    pub fn det(&self) -> C64 {
        self.to_nalgebra().lu().determinant()
    }

    /// Inverse by LU factorization (generic path, used as the oracle for the closed forms).
    pub fn inverse_lu(&self) -> Result<Self> {
        self.to_nalgebra()
            .lu()
            .try_inverse()
            .map(|m| Self::from_nalgebra(&m))
            .ok_or_else(|| Error::Singular("LU inverse of singular matrix".into()))
    }

    /// Eigenvalues via a complex Schur decomposition.
    pub fn eigenvalues(&self) -> Vec<C64> {
        let schur = nalgebra::linalg::Schur::new(self.to_nalgebra());
        let (_, t) = schur.unpack();
        (0..self.dim).map(|i| t[(i, i)]).collect()
    }

    /// `‖self − other‖ / max(‖other‖, floor)` in the max-entry norm.
    pub fn rel_diff(&self, other: &Self, floor: f64) -> f64 {
        (self - other).max_abs() / other.max_abs().max(floor)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}
