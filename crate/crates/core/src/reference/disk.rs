//! Exact per-mode DN map of the constant-coefficient disk of radius `R`.
//!
//! `u = ∇Φ + rot Ψ` with `rot Ψ = (∂_yΨ, −∂_xΨ)`, `Φ = A J_n(κ_p r)e^{inφ}`
//! and `Ψ = B J_n(κ_s r)e^{inφ}`, `κ² = z²n/(h²c)`. Amplitudes are normalized
//! by `J_n(κR)` so that only log-derivatives appear.

use super::bessel::{bessel_logderiv, second_over_value};
use super::Orientation;
use crate::algebra::ComplexMatrix;
use crate::error::{Error, Result};
use crate::params::SemiclassicalParams;
use crate::C64;

#[derive(Debug, Clone)]
pub struct DiskMode {
    /// `−ihN` on mode `n`. Inward: frame `(ν, R₉₀ν) = (−r̂, −φ̂)`.
    /// Outward: outward traction in the frame `(−ν, R₉₀ν) = (r̂, −φ̂)`.
    pub matrix: ComplexMatrix,
    /// Condition number of the 2×2 displacement system (max-entry estimate).
    pub condition: f64,
}

/// Displacement and traction coefficients at `r = R` for unit normalized amplitudes.
struct Columns {
    disp: [[C64; 2]; 2],
    trac: [[C64; 2]; 2],
}

fn columns(params: &SemiclassicalParams, mu: f64, lambda: f64, n: f64, radius: f64, mode: i64) -> Result<Columns> {
    let h = params.h();
    let z = params.z();
    let cp = 2.0 * mu + lambda;
    let kp = z * (n / cp).sqrt() / h;
    let ks = z * (n / mu).sqrt() / h;
    let (wp, ws) = (kp * radius, ks * radius);
    let lp = bessel_logderiv(mode, wp)?;
    let ls = bessel_logderiv(mode, ws)?;
    let jp2 = second_over_value(mode, wp, lp);
    let js2 = second_over_value(mode, ws, ls);
    let i = C64::new(0.0, 1.0);
    let inr = i * (mode as f64) / radius;
    let r = radius;

    // columns: A' (gradient part), B' (rotation part)
    let ur = [kp * lp, inr];
    let uphi = [inr, -ks * ls];
    let dur = [kp * kp * jp2, -inr / r + inr * ks * ls];
    let duphi = [-inr / r + inr * kp * lp, -ks * ks * js2];
    let div = [-kp * kp, C64::new(0.0, 0.0)];
    let mut srr = [C64::new(0.0, 0.0); 2];
    let mut srphi = [C64::new(0.0, 0.0); 2];
    for c in 0..2 {
        srr[c] = div[c] * lambda + dur[c] * (2.0 * mu);
        srphi[c] = (duphi[c] - uphi[c] / r + inr * ur[c]) * mu;
    }
    Ok(Columns { disp: [ur, uphi], trac: [srr, srphi] })
}

/// Exact `−ihN` on the mode `e^{inφ}`.
pub fn disk_dn_mode(
    params: &SemiclassicalParams,
    mu: f64,
    lambda: f64,
    n: f64,
    radius: f64,
    mode: i64,
    orientation: Orientation,
) -> Result<DiskMode> {
    if !(mu > 0.0 && lambda + mu > 0.0 && n > 0.0) {
        return Err(Error::InvalidMedium(format!("mu={mu}, lambda={lambda}, n={n}")));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let cols = columns(params, mu, lambda, n, radius, mode)?;
    let d = ComplexMatrix::from_rows(&[cols.disp[0].to_vec(), cols.disp[1].to_vec()])?;
    let s = ComplexMatrix::from_rows(&[cols.trac[0].to_vec(), cols.trac[1].to_vec()])?;
    let det = d[(0, 0)] * d[(1, 1)] - d[(0, 1)] * d[(1, 0)];
    if !(det.norm() > 0.0) || !det.re.is_finite() {
        return Err(Error::Singular(format!("displacement system singular for mode {mode}")));
    }
    let dinv =
        ComplexMatrix::from_rows(&[vec![d[(1, 1)] / det, -d[(0, 1)] / det], vec![-d[(1, 0)] / det, d[(0, 0)] / det]])?;
    let condition = d.max_abs() * dinv.max_abs() * 2.0;
    let outward_traction = &s * &dinv;
    // −ih times the traction along the chosen normal. The inward frame is
    // (−r̂, −φ̂), a sign flip of both axes that leaves the matrix unchanged.
    let ih = C64::new(0.0, params.h());
    let matrix = orientation.apply(&outward_traction.scale(ih));
    Ok(DiskMode { matrix, condition })
}

/// Ratio `J_n(κr)/J_n(κR)` from `∫_R^r κ L(κt) dt` (composite Simpson).
pub fn bessel_value_ratio(kappa: C64, mode: i64, radius: f64, r: f64, intervals: usize) -> Result<C64> {
    let m = intervals.max(2) + intervals % 2;
    let step = (r - radius) / m as f64;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..=m {
        let t = radius + j as f64 * step;
        let w = if j == 0 || j == m {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += kappa * bessel_logderiv(mode, kappa * t)? * w;
    }
    Ok((acc * step / 3.0).exp())
}

/// Exact interior displacement in `(r̂, φ̂)` components for the boundary data
/// `g` (also in `(r̂, φ̂)`) on mode `n`, evaluated at radius `r`.
pub fn disk_interior_field(
    params: &SemiclassicalParams,
    mu: f64,
    lambda: f64,
    n: f64,
    radius: f64,
    mode: i64,
    g: [C64; 2],
    r: f64,
) -> Result<[C64; 2]> {
    let cols = columns(params, mu, lambda, n, radius, mode)?;
    let d = cols.disp;
    let det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
    let a = (d[1][1] * g[0] - d[0][1] * g[1]) / det;
    let b = (-d[1][0] * g[0] + d[0][0] * g[1]) / det;
    let h = params.h();
    let z = params.z();
    let kp = z * (n / (2.0 * mu + lambda)).sqrt() / h;
    let ks = z * (n / mu).sqrt() / h;
    let intervals = 400;
    let fp = bessel_value_ratio(kp, mode, radius, r, intervals)?;
    let fs = bessel_value_ratio(ks, mode, radius, r, intervals)?;
    let lp = bessel_logderiv(mode, kp * r)?;
    let ls = bessel_logderiv(mode, ks * r)?;
    let inr = C64::new(0.0, mode as f64 / r);
    let ur = a * fp * kp * lp + b * fs * inr;
    let uphi = a * fp * inr - b * fs * ks * ls;
    Ok([ur, uphi])
}
