//! Boundary geometry: flat half-spaces and closed planar curves, the normal
//! `ν` (pointing into the domain) and cotangent points `(x', ξ')`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::taylor::TaylorPolynomial;

/// One curvature harmonic `a cos(2πm s/L) + b sin(2πm s/L)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureHarmonic {
    pub m: u32,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

/// A closed curve traversed counter-clockwise by arclength `s ∈ [0, L)`.
///
/// The curvature is `κ(s) = 2π/L + Σ harmonics`, so the tangent angle
/// `ψ(s) = ψ₀ + ∫₀ˢ κ` winds once. The tangent is `t = (cos ψ, sin ψ)` and
/// the inward normal is `ν = (−sin ψ, cos ψ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarCurve {
    pub length: f64,
    #[serde(default = "default_psi0")]
    pub psi0: f64,
    #[serde(default)]
    pub harmonics: Vec<CurvatureHarmonic>,
    /// Position of `s = 0`.
    #[serde(default)]
    pub origin: [f64; 2],
}

fn default_psi0() -> f64 {
    FRAC_PI_2
}

/// Local frame of a planar curve at one arclength value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveFrame {
    pub tangent: [f64; 2],
    pub normal: [f64; 2],
    pub curvature: f64,
    pub curvature_derivative: f64,
}

impl PlanarCurve {
    /// Circle of radius `R` centred at the origin, with `s = Rφ`.
    pub fn circle(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { length: 2.0 * PI * radius, psi0: FRAC_PI_2, harmonics: Vec::new(), origin: [radius, 0.0] })
    }

    pub fn is_circle(&self) -> bool {
        self.harmonics.iter().all(|h| h.cos == 0.0 && h.sin == 0.0)
    }

    pub fn radius(&self) -> f64 {
        self.length / (2.0 * PI)
    }

    fn omega(&self, m: u32) -> f64 {
        2.0 * PI * m as f64 / self.length
    }

    pub fn curvature(&self, s: f64) -> f64 {
        let mut k = 2.0 * PI / self.length;
        for h in &self.harmonics {
            let w = self.omega(h.m);
            k += h.cos * (w * s).cos() + h.sin * (w * s).sin();
        }
        k
    }

    pub fn curvature_derivative(&self, s: f64) -> f64 {
        let mut k = 0.0;
        for h in &self.harmonics {
            let w = self.omega(h.m);
            k += w * (h.sin * (w * s).cos() - h.cos * (w * s).sin());
        }
        k
    }

    /// Tangent angle `ψ(s)`.
    pub fn angle(&self, s: f64) -> f64 {
        let mut psi = self.psi0 + 2.0 * PI * s / self.length;
        for h in &self.harmonics {
            let w = self.omega(h.m);
            if w == 0.0 {
                continue;
            }
            psi += h.cos * (w * s).sin() / w - h.sin * ((w * s).cos() - 1.0) / w;
        }
        psi
    }

    pub fn frame(&self, s: f64) -> CurveFrame {
        let psi = self.angle(s);
        let (sn, cs) = psi.sin_cos();
        CurveFrame {
            tangent: [cs, sn],
            normal: [-sn, cs],
            curvature: self.curvature(s),
            curvature_derivative: self.curvature_derivative(s),
        }
    }

    /// Boundary point `X(s)`; exact for circles, composite Simpson otherwise.
    pub fn position(&self, s: f64) -> [f64; 2] {
        if self.is_circle() {
            let r = self.radius();
            let phi = s / r;
            // ψ₀ shifts the starting angle
            let phi0 = self.psi0 - FRAC_PI_2;
            let c = [self.origin[0] - r * phi0.cos(), self.origin[1] - r * phi0.sin()];
            return [c[0] + r * (phi + phi0).cos(), c[1] + r * (phi + phi0).sin()];
        }
        let n = 2048;
        let step = s / n as f64;
        let mut acc = [0.0, 0.0];
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let t = self.frame(i as f64 * step).tangent;
            acc[0] += w * t[0];
            acc[1] += w * t[1];
        }
        [self.origin[0] + acc[0] * step / 3.0, self.origin[1] + acc[1] * step / 3.0]
    }

    /// Largest `x₁` keeping `1 − κx₁ ≥ 1/2` everywhere on the curve.
    pub fn collar_limit(&self) -> f64 {
        let samples = 512;
        let kmax =
            (0..samples).map(|i| self.curvature(self.length * i as f64 / samples as f64)).fold(0.0f64, |m, k| m.max(k));
        if kmax > 0.0 {
            0.5 / kmax
        } else {
            f64::INFINITY
        }
    }
}

/// Where cotangent points live.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeometryChart {
    /// `x₁ > 0` in `R^d`, with `ν = e₁` and tangents `e₂,…,e_d`.
    FlatHalfspace {
        dim: usize,
    },
    PlanarCurve(PlanarCurve),
}

/// A cotangent point with its boundary frame data.
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentPoint {
    /// `x'` (arclength on a curve, chart coordinates on a flat boundary).
    pub position: Vec<f64>,
    pub xi: Vec<f64>,
    /// Unit normal into the domain.
    pub nu: Vec<f64>,
    /// `γe_k` at `x₁ = 0`, `k = 2..d`; orthonormal and orthogonal to `ν`.
    pub tangents: Vec<Vec<f64>>,
    /// `β₀ = Σ ξ_k γe_k`.
    pub beta0: Vec<f64>,
    /// `r₀ = ⟨β₀,β₀⟩`.
    pub r0: f64,
    /// `∂_{x'} r₀` at fixed `ξ'`.
    pub grad_r0: Vec<f64>,
    pub curvature: f64,
}

impl CotangentPoint {
    /// Builds a point from an explicit frame, checking `⟨ν,β₀⟩ = 0`.
    pub fn from_frame(position: Vec<f64>, xi: Vec<f64>, nu: Vec<f64>, tangents: Vec<Vec<f64>>) -> Result<Self> {
        let d = nu.len();
        if tangents.len() != d - 1 || xi.len() != d - 1 || position.len() != d - 1 {
            return Err(Error::DimensionMismatch { expected: d - 1, got: tangents.len().min(xi.len()) });
        }
        let mut beta0 = vec![0.0; d];
        for (k, t) in tangents.iter().enumerate() {
            if t.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: t.len() });
            }
            for i in 0..d {
                beta0[i] += xi[k] * t[i];
            }
        }
        let scale = beta0.iter().map(|b| b.abs()).fold(1.0, f64::max);
        let nb: f64 = nu.iter().zip(&beta0).map(|(a, b)| a * b).sum();
        if nb.abs() > 1e-12 * scale {
            return Err(Error::InvalidInput(format!("<nu, beta0> = {nb:e} is not zero")));
        }
        let r0 = beta0.iter().map(|b| b * b).sum();
        let grad_r0 = vec![0.0; d - 1];
        Ok(Self { position, xi, nu, tangents, beta0, r0, grad_r0, curvature: 0.0 })
    }

    /// A point on the flat boundary of `x₁ > 0` in `R^d`, `d = xi.len() + 1`.
    pub fn flat(position: Vec<f64>, xi: Vec<f64>) -> Result<Self> {
        let d = xi.len() + 1;
        let mut nu = vec![0.0; d];
        nu[0] = 1.0;
        let tangents = (1..d)
            .map(|k| {
                let mut e = vec![0.0; d];
                e[k] = 1.0;
                e
            })
            .collect();
        Self::from_frame(position, xi, nu, tangents)
    }

    pub fn dim(&self) -> usize {
        self.nu.len()
    }

    pub fn xi_norm(&self) -> f64 {
        self.xi.iter().map(|a| a * a).sum::<f64>().sqrt()
    }
}

impl GeometryChart {
    pub fn dim(&self) -> usize {
        match self {
            Self::FlatHalfspace { dim } => *dim,
            Self::PlanarCurve(_) => 2,
        }
    }

    pub fn cotangent_point(&self, position: &[f64], xi: &[f64]) -> Result<CotangentPoint> {
        match self {
            Self::FlatHalfspace { dim } => {
                if xi.len() + 1 != *dim {
                    return Err(Error::DimensionMismatch { expected: dim - 1, got: xi.len() });
                }
                CotangentPoint::flat(position.to_vec(), xi.to_vec())
            }
            Self::PlanarCurve(curve) => {
                if xi.len() != 1 || position.len() != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, got: xi.len() });
                }
                let f = curve.frame(position[0]);
                let mut p = CotangentPoint::from_frame(
                    position.to_vec(),
                    xi.to_vec(),
                    f.normal.to_vec(),
                    vec![f.tangent.to_vec()],
                )?;
                p.curvature = f.curvature;
                Ok(p)
            }
        }
    }

    /// Taylor coefficients in `x₁` of `r(x₁) = ⟨β,β⟩` at the point, `len` terms.
    pub fn metric_jet(&self, point: &CotangentPoint, len: usize) -> TaylorPolynomial {
        match self {
            Self::FlatHalfspace { .. } => TaylorPolynomial::from_real(&[point.r0], len),
            Self::PlanarCurve(_) => {
                TaylorPolynomial::inverse_square_one_minus(point.curvature, len).scale(point.r0.into())
            }
        }
    }

    /// Collar on which the normal coordinates are valid (`1 − κx₁ ≥ 1/2`).
    pub fn collar_limit(&self) -> f64 {
        match self {
            Self::FlatHalfspace { .. } => f64::INFINITY,
            Self::PlanarCurve(c) => c.collar_limit(),
        }
    }
}
