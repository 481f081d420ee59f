//! Frequency bookkeeping: `h`, `θ`, `z` and `τ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

/// Semiclassical parameters on the branch `Re τ >= |Im τ|`.
///
/// There `h = 1/Re τ` and `z = hτ = 1 + iθ` with `θ = |Im z| ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemiclassicalParams {
    h: f64,
    theta: f64,
    z: C64,
    tau: C64,
}

impl SemiclassicalParams {
    /// Builds the parameters from the physical frequency `τ`.
    pub fn from_tau(tau: C64) -> Result<Self> {
        if !(tau.re.is_finite() && tau.im.is_finite()) || tau.re <= 0.0 {
            return Err(Error::Frequency(format!("Re tau must be positive, got {tau}")));
        }
        if tau.im == 0.0 {
            return Err(Error::Frequency("Im tau = 0 gives theta = 0".into()));
        }
        if tau.im.abs() > tau.re {
            return Err(Error::Frequency(format!("|Im tau| > Re tau is not supported (tau = {tau})")));
        }
        let h = 1.0 / tau.re;
        let z = tau * h;
        Ok(Self { h, theta: z.im.abs(), z, tau })
    }

    /// Builds the parameters directly from `(h, θ)`, i.e. `τ = (1 + iθ)/h`.
    pub fn from_h_theta(h: f64, theta: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Frequency(format!("h must be positive, got {h}")));
        }
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::Frequency(format!("theta must lie in (0, 1], got {theta}")));
        }
        let z = C64::new(1.0, theta);
        Ok(Self { h, theta, z, tau: z / h })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn z_squared(&self) -> C64 {
        self.z * self.z
    }

    /// Whether `θ >= h^{2/5 - ε}`, the regime in which the `O(hθ^{-2})` estimate is claimed.
    pub fn in_regime(&self, epsilon: f64) -> bool {
        self.theta >= self.h.powf(0.4 - epsilon)
    }
}
