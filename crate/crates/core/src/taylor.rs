//! Truncated power series in the normal variable `x₁`.

use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::C64;

/// `Σ_{k<len} c_k x₁^k`. Products truncate to the shorter operand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorPolynomial {
    coeffs: Vec<C64>,
}

impl TaylorPolynomial {
    pub fn new(coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "a Taylor polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![C64::new(0.0, 0.0); len])
    }

    pub fn from_real(coeffs: &[f64], len: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); len];
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            *dst = C64::new(src, 0.0);
        }
        Self::new(c)
    }

    /// Series of `(1 − κx₁)^{-2} = Σ (k+1) κ^k x₁^k`.
    pub fn inverse_square_one_minus(kappa: f64, len: usize) -> Self {
        let mut c = Vec::with_capacity(len);
        let mut p = 1.0;
        for k in 0..len {
            c.push(C64::new((k + 1) as f64 * p, 0.0));
            p *= kappa;
        }
        Self::new(c)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn set_coeff(&mut self, k: usize, value: C64) {
        self.coeffs[k] = value;
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zeros(1);
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn truncate(&self, len: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(len.max(1), C64::new(0.0, 0.0));
        Self::new(c)
    }

    /// Product truncated to `len` terms.
    pub fn mul_trunc(&self, other: &Self, len: usize) -> Self {
        let mut out = vec![C64::new(0.0, 0.0); len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl Add for &TaylorPolynomial {
    type Output = TaylorPolynomial;
    fn add(self, rhs: &TaylorPolynomial) -> TaylorPolynomial {
        let len = self.len().max(rhs.len());
        TaylorPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &TaylorPolynomial {
    type Output = TaylorPolynomial;
    fn sub(self, rhs: &TaylorPolynomial) -> TaylorPolynomial {
        let len = self.len().max(rhs.len());
        TaylorPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &TaylorPolynomial {
    type Output = TaylorPolynomial;
    fn mul(self, rhs: &TaylorPolynomial) -> TaylorPolynomial {
        self.mul_trunc(rhs, self.len().min(rhs.len()))
    }
}
