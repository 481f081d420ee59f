//! The elastic medium: Lamé fields `μ`, `λ` and density `n`, wave speeds and
//! glancing-region classification.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A scalar field on a neighbourhood of the boundary.
///
/// `x` holds the tangential coordinates `x'` (arclength on a curve, chart
/// coordinates on a flat boundary). The normal dependence is given by a Taylor
/// jet in the normal variable `x₁`, evaluated at `x₁ = 0`.
pub trait MediumField: Send + Sync + fmt::Debug {
    fn value(&self, x: &[f64]) -> f64;

    /// Tangential gradient `∂_{x'}` at `x₁ = 0`.
    fn gradient(&self, x: &[f64]) -> Vec<f64>;

    /// Taylor coefficients `[f₀, f₁, ...]` of `x₁ ↦ f(x₁, x')`, `len = order + 1`.
    fn normal_jet(&self, x: &[f64], order: usize) -> Vec<f64> {
        let mut jet = vec![0.0; order + 1];
        jet[0] = self.value(x);
        jet
    }
}

/// One tangential Fourier term `a cos(k x_axis) + b sin(k x_axis)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    #[serde(default)]
    pub axis: usize,
    pub wavenumber: f64,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

/// Closed-form profile: constant base, tangential Fourier terms and a
/// polynomial normal jet (`normal[j]` multiplies `x₁^{j+1}`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub base: f64,
    #[serde(default)]
    pub harmonics: Vec<Harmonic>,
    #[serde(default)]
    pub normal: Vec<f64>,
}

impl Profile {
    pub fn constant(base: f64) -> Self {
        Self { base, harmonics: Vec::new(), normal: Vec::new() }
    }

    pub fn is_constant(&self) -> bool {
        self.harmonics.iter().all(|h| h.cos == 0.0 && h.sin == 0.0) && self.normal.iter().all(|&c| c == 0.0)
    }
}

impl MediumField for Profile {
    fn value(&self, x: &[f64]) -> f64 {
        let mut v = self.base;
        for h in &self.harmonics {
            let t = h.wavenumber * x.get(h.axis).copied().unwrap_or(0.0);
            v += h.cos * t.cos() + h.sin * t.sin();
        }
        v
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        for h in &self.harmonics {
            if h.axis >= x.len() {
                continue;
            }
            let t = h.wavenumber * x[h.axis];
            g[h.axis] += h.wavenumber * (h.sin * t.cos() - h.cos * t.sin());
        }
        g
    }

    fn normal_jet(&self, x: &[f64], order: usize) -> Vec<f64> {
        let mut jet = vec![0.0; order + 1];
        jet[0] = self.value(x);
        for (j, &c) in self.normal.iter().enumerate() {
            if j + 1 <= order {
                jet[j + 1] = c;
            }
        }
        jet
    }
}

/// Isotropic elastic medium near the boundary.
#[derive(Debug, Clone)]
pub struct ElasticMedium {
    pub mu: Arc<dyn MediumField>,
    pub lambda: Arc<dyn MediumField>,
    pub density: Arc<dyn MediumField>,
}

/// Pointwise values of the medium at a boundary point, with tangential gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct MediumSample {
    pub mu: f64,
    pub lambda: f64,
    pub n: f64,
    pub grad_mu: Vec<f64>,
    pub grad_lambda: Vec<f64>,
    pub grad_n: Vec<f64>,
}

/// Position of a cotangent point relative to the glancing sets `Σ_s`, `Σ_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `c_p r₀ < n` and `c_s r₀ < n`.
    HyperbolicBoth,
    /// Past `Σ_p` but not past `Σ_s`.
    Between,
    /// `c_s r₀ > n`: both roots elliptic.
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionReport {
    pub region: Region,
    /// `c_s r₀ − n`; zero on `Σ_s`.
    pub residual_s: f64,
    /// `c_p r₀ − n`; zero on `Σ_p`.
    pub residual_p: f64,
}

impl ElasticMedium {
    pub fn new(mu: Arc<dyn MediumField>, lambda: Arc<dyn MediumField>, density: Arc<dyn MediumField>) -> Self {
        Self { mu, lambda, density }
    }

    pub fn from_profiles(mu: Profile, lambda: Profile, density: Profile) -> Self {
        Self::new(Arc::new(mu), Arc::new(lambda), Arc::new(density))
    }

    /// Constant medium; fails unless `μ > 0`, `λ + μ > 0`, `n > 0`.
    pub fn constant(mu: f64, lambda: f64, n: f64) -> Result<Self> {
        check_lame(mu, lambda, n)?;
        Ok(Self::from_profiles(Profile::constant(mu), Profile::constant(lambda), Profile::constant(n)))
    }

    /// Samples the medium at the tangential point `x`, validating the Lamé conditions.
    pub fn sample(&self, x: &[f64]) -> Result<MediumSample> {
        let mu = self.mu.value(x);
        let lambda = self.lambda.value(x);
        let n = self.density.value(x);
        check_lame(mu, lambda, n)?;
        Ok(MediumSample {
            mu,
            lambda,
            n,
            grad_mu: self.mu.gradient(x),
            grad_lambda: self.lambda.gradient(x),
            grad_n: self.density.gradient(x),
        })
    }
}

fn check_lame(mu: f64, lambda: f64, n: f64) -> Result<()> {
    if !(mu > 0.0) {
        return Err(Error::InvalidMedium(format!("mu must be positive, got {mu}")));
    }
    if !(lambda + mu > 0.0) {
        return Err(Error::InvalidMedium(format!("lambda + mu must be positive, got {}", lambda + mu)));
    }
    if !(n > 0.0) {
        return Err(Error::InvalidMedium(format!("density must be positive, got {n}")));
    }
    Ok(())
}

impl MediumSample {
    /// A constant sample with zero gradients in `dim_tangent` directions.
    pub fn constant(mu: f64, lambda: f64, n: f64, dim_tangent: usize) -> Result<Self> {
        check_lame(mu, lambda, n)?;
        Ok(Self {
            mu,
            lambda,
            n,
            grad_mu: vec![0.0; dim_tangent],
            grad_lambda: vec![0.0; dim_tangent],
            grad_n: vec![0.0; dim_tangent],
        })
    }

    pub fn c_s(&self) -> f64 {
        self.mu
    }

    pub fn c_p(&self) -> f64 {
        2.0 * self.mu + self.lambda
    }

    pub fn k_s(&self) -> f64 {
        self.n / self.c_s()
    }

    pub fn k_p(&self) -> f64 {
        self.n / self.c_p()
    }

    pub fn grad_c_s(&self) -> Vec<f64> {
        self.grad_mu.clone()
    }

    pub fn grad_c_p(&self) -> Vec<f64> {
        self.grad_mu.iter().zip(&self.grad_lambda).map(|(m, l)| 2.0 * m + l).collect()
    }

    /// Tangential gradient of `k = n/c` by the quotient rule.
    pub fn grad_k(&self, c: f64, grad_c: &[f64]) -> Vec<f64> {
        self.grad_n.iter().zip(grad_c).map(|(dn, dc)| dn / c - self.n * dc / (c * c)).collect()
    }

    pub fn classify(&self, r0: f64) -> RegionReport {
        region_classify(self.c_s(), self.c_p(), self.n, r0)
    }
}

/// Classifies `r₀` against the glancing sets `c r₀ = n`.
pub fn region_classify(c_s: f64, c_p: f64, n: f64, r0: f64) -> RegionReport {
    let residual_s = c_s * r0 - n;
    let residual_p = c_p * r0 - n;
    let region = if residual_s > 0.0 {
        Region::Elliptic
    } else if residual_p > 0.0 {
        Region::Between
    } else {
        Region::HyperbolicBoth
    };
    RegionReport { region, residual_s, residual_p }
}
