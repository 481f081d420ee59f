//! Eikonal phases `φ_s`, `φ_p` as truncated Taylor series in `x₁`.
//!
//! With `p = ∂₁φ` the equation `c (γ∇φ)² − z²n = O(x₁ᴺ)` is matched order by
//! order. The tangential part of `γ∇φ` is `G(x₁)^{1/2}(−ξ' + x₁∇'ρ)` with
//! `G = (1−κx₁)⁻²` on a curve and `G = 1` on a flat chart. Tangential
//! derivatives of `φ_k`, `k ≥ 2`, are dropped; they vanish for circles and flat
//! charts with media constant along the boundary.
//!
//! Order `m` reads `Σ_j c_j (p² + r)_{m−j} = z²n_m`, and the only unknown in it
//! is `2c₀p₀p_m`, so `p_m = (m+1)φ_{m+1}` follows by division by `2c₀ρ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{CotangentPoint, GeometryChart};
use crate::medium::ElasticMedium;
use crate::params::SemiclassicalParams;
use crate::symbol::{normal_root, rho_gradient, Branch};
use crate::taylor::TaylorPolynomial;
use crate::C64;

/// Extra series terms used when evaluating the residual.
const RESIDUAL_GUARD: usize = 48;

/// A solved phase `φ = Σ_{k=0}^{N} φ_k x₁^k`.
#[derive(Debug, Clone, Serialize)]
pub struct Phase {
    pub branch: Branch,
    pub order: usize,
    pub rho: C64,
    /// `φ₀ = −⟨x',ξ'⟩, φ₁ = ρ, φ₂, …, φ_N`.
    pub coeffs: TaylorPolynomial,
    /// Series of `c(γ∇φ)² − z²n` for the truncated phase.
    pub residual: TaylorPolynomial,
    /// Normal collar on which the coordinates are valid.
    pub collar_limit: f64,
    /// `|z²n₀| + c₀r₀`, the size of the terms that cancel at `x₁ = 0`.
    pub residual_scale: f64,
}

/// Normal jets of the inputs at one boundary point.
#[derive(Debug, Clone)]
pub struct EikonalJets {
    pub c: TaylorPolynomial,
    pub n: TaylorPolynomial,
    /// `r(x₁)` including the `x₁∇'ρ` tangential correction.
    pub r: TaylorPolynomial,
    pub z2: C64,
    pub phi0: f64,
}

fn jets(
    params: &SemiclassicalParams,
    medium: &ElasticMedium,
    chart: &GeometryChart,
    point: &CotangentPoint,
    branch: Branch,
    len: usize,
) -> Result<EikonalJets> {
    let x = &point.position;
    let mu = medium.mu.normal_jet(x, len - 1);
    let c: Vec<f64> = match branch {
        Branch::S => mu,
        Branch::P => {
            let la = medium.lambda.normal_jet(x, len - 1);
            mu.iter().zip(&la).map(|(m, l)| 2.0 * m + l).collect()
        }
    };
    let n = medium.density.normal_jet(x, len - 1);
    let sample = medium.sample(x)?;
    let grad = rho_gradient(params, &sample, point, branch);
    // |−ξ' + x₁∇'ρ|² = r₀ − 2x₁⟨ξ',∇'ρ⟩ + x₁²⟨∇'ρ,∇'ρ⟩ (bilinear)
    let xg: C64 = point.xi.iter().zip(&grad).map(|(a, g)| g * *a).sum();
    let gg: C64 = grad.iter().map(|g| g * g).sum();
    let mut tang = vec![C64::new(point.r0, 0.0), -xg * 2.0, gg];
    tang.resize(len.max(3), C64::new(0.0, 0.0));
    let tang = TaylorPolynomial::new(tang).truncate(len);
    let metric = match chart {
        GeometryChart::FlatHalfspace { .. } => TaylorPolynomial::from_real(&[1.0], len),
        GeometryChart::PlanarCurve(_) => TaylorPolynomial::inverse_square_one_minus(point.curvature, len),
    };
    let phi0 = -point.position.iter().zip(&point.xi).map(|(a, b)| a * b).sum::<f64>();
    Ok(EikonalJets {
        c: TaylorPolynomial::from_real(&c, len),
        n: TaylorPolynomial::from_real(&n, len),
        r: metric.mul_trunc(&tang, len),
        z2: params.z_squared(),
        phi0,
    })
}

/// Coefficient recursion on given jets; returns `p = ∂₁φ` with `order` terms.
pub fn solve_normal_derivative(j: &EikonalJets, rho: C64, order: usize) -> Result<TaylorPolynomial> {
    if rho.norm() == 0.0 {
        return Err(Error::Singular("rho = 0".into()));
    }
    let c0 = j.c.coeff(0);
    let mut p = TaylorPolynomial::zeros(order);
    p.set_coeff(0, rho);
    for m in 1..order {
        let mut acc = C64::new(0.0, 0.0);
        // c₀ × (known part of (p²)_m + r_m)
        let mut known = j.r.coeff(m);
        for i in 1..m {
            known += p.coeff(i) * p.coeff(m - i);
        }
        acc += c0 * known;
        for jj in 1..=m {
            let mut sq = j.r.coeff(m - jj);
            for i in 0..=(m - jj) {
                sq += p.coeff(i) * p.coeff(m - jj - i);
            }
            acc += j.c.coeff(jj) * sq;
        }
        acc -= j.z2 * j.n.coeff(m);
        p.set_coeff(m, -acc / (c0 * rho * 2.0));
    }
    Ok(p)
}

/// Series of `c(p² + r) − z²n` with `len` terms.
pub fn residual_series(j: &EikonalJets, p: &TaylorPolynomial, len: usize) -> TaylorPolynomial {
    let p = p.truncate(len);
    let sq = &p.mul_trunc(&p, len) + &j.r.truncate(len);
    let lhs = j.c.truncate(len).mul_trunc(&sq, len);
    &lhs - &j.n.truncate(len).scale(j.z2)
}

/// Solves the eikonal equation to order `N` (`2 ≤ N ≤ 12`).
pub fn solve_eikonal(
    params: &SemiclassicalParams,
    medium: &ElasticMedium,
    chart: &GeometryChart,
    point: &CotangentPoint,
    branch: Branch,
    order: usize,
) -> Result<Phase> {
    if !(2..=12).contains(&order) {
        return Err(Error::InvalidInput(format!("eikonal order must be in 2..=12, got {order}")));
    }
    let len = 2 * order + RESIDUAL_GUARD;
    let j = jets(params, medium, chart, point, branch, len)?;
    let c0 = j.c.coeff(0).re;
    let rho = normal_root(params.z(), point.r0, j.n.coeff(0).re / c0);
    let p = solve_normal_derivative(&j, rho, order)?;
    let residual = residual_series(&j, &p, len);
    let mut coeffs = vec![C64::new(j.phi0, 0.0)];
    for (m, &pm) in p.coeffs().iter().enumerate() {
        coeffs.push(pm / (m + 1) as f64);
    }
    Ok(Phase {
        branch,
        order,
        rho,
        coeffs: TaylorPolynomial::new(coeffs),
        residual,
        collar_limit: chart.collar_limit(),
        residual_scale: (j.z2 * j.n.coeff(0)).norm() + c0 * point.r0,
    })
}

impl Phase {
    /// `φ(x₁) − φ₀`.
    pub fn phase_tilde(&self, x1: f64) -> C64 {
        let mut c = self.coeffs.clone();
        c.set_coeff(0, C64::new(0.0, 0.0));
        c.eval(x1)
    }

    /// `∂₁φ(x₁)`.
    pub fn normal_derivative(&self, x1: f64) -> C64 {
        self.coeffs.derivative().eval(x1)
    }

    /// `φ_k`.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.coeff(k)
    }

    /// `|c(γ∇φ)² − z²n|` at `x₁`, summed from the residual series.
    pub fn residual_at(&self, x1: f64) -> Result<f64> {
        self.check_collar(x1)?;
        Ok(self.residual.eval(x1).norm())
    }

    /// [`Phase::residual_at`] over [`Phase::residual_scale`].
    pub fn relative_residual_at(&self, x1: f64) -> Result<f64> {
        Ok(self.residual_at(x1)? / self.residual_scale)
    }

    /// `residual(x₁/2) / residual(x₁)`; about `2^{−N}` in the asymptotic range.
    pub fn residual_ratio(&self, x1: f64) -> Result<f64> {
        Ok(self.residual_at(x1 / 2.0)? / self.residual_at(x1)?)
    }

    /// A probe `x₁` for [`Phase::residual_ratio`]: starts at `0.1 min(1,|ρ|³)`
    /// and doubles while the halved residual is still near rounding level.
    pub fn residual_probe(&self) -> f64 {
        let floor = 1e-11 * self.residual.coeff(0).norm().max(self.rho.norm_sqr());
        let cap = 0.4 * self.collar_limit.min(1.0);
        let mut x = (0.1 * self.collar_scale()).min(cap);
        while 2.0 * x <= cap && self.residual.eval(x / 2.0).norm() < floor {
            x *= 2.0;
        }
        x
    }

    fn check_collar(&self, x1: f64) -> Result<()> {
        if !(0.0..=self.collar_limit).contains(&x1) {
            return Err(Error::OutsideCollar { x1, limit: self.collar_limit });
        }
        Ok(())
    }

    /// Collar scale `min(1, |ρ|³)`.
    pub fn collar_scale(&self) -> f64 {
        self.rho.norm().powi(3).min(1.0)
    }
}

/// Outcome of the `Im φ̃ ≥ x₁Im ρ/2`, `|∂₁φ| ≥ |ρ|/2` scan.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseCheckReport {
    /// Largest dyadic `δ` for which both checks hold on `0 ≤ x₁ ≤ 2δ min(1,|ρ|³)`.
    pub delta: Option<f64>,
    pub collar: f64,
    /// Worst `Im φ̃ − x₁Im ρ/2` over the reported collar (nonnegative on pass).
    pub imag_margin: f64,
    /// Worst `|∂₁φ| − |ρ|/2` over the reported collar.
    pub derivative_margin: f64,
    /// Fitted `C` in `Im φ̃ ≥ C x₁ θ` on the collar.
    pub decay_constant: f64,
}

/// Scans `δ = 2⁰, 2⁻¹, …, 2⁻²⁰` on a 64-point grid per candidate collar.
pub fn phase_checks(phase: &Phase, theta: f64) -> PhaseCheckReport {
    let scale = phase.collar_scale();
    let samples = 64;
    for e in 0..=20 {
        let delta = 0.5f64.powi(e);
        let collar = 2.0 * delta * scale;
        if collar > phase.collar_limit {
            continue;
        }
        let mut imag_margin = f64::INFINITY;
        let mut derivative_margin = f64::INFINITY;
        let mut decay = f64::INFINITY;
        for i in 0..=samples {
            let x = collar * i as f64 / samples as f64;
            let pt = phase.phase_tilde(x);
            imag_margin = imag_margin.min(pt.im - x * phase.rho.im / 2.0);
            derivative_margin = derivative_margin.min(phase.normal_derivative(x).norm() - phase.rho.norm() / 2.0);
            if i > 0 {
                decay = decay.min(pt.im / (x * theta));
            }
        }
        if imag_margin >= 0.0 && derivative_margin >= 0.0 {
            return PhaseCheckReport {
                delta: Some(delta),
                collar,
                imag_margin,
                derivative_margin,
                decay_constant: decay,
            };
        }
    }
    PhaseCheckReport {
        delta: None,
        collar: 0.0,
        imag_margin: f64::NEG_INFINITY,
        derivative_margin: f64::NEG_INFINITY,
        decay_constant: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PlanarCurve;
    use crate::medium::Profile;

    fn circle() -> GeometryChart {
        GeometryChart::PlanarCurve(PlanarCurve::circle(1.0).unwrap())
    }

    #[test]
    fn flat_constant_is_plane_wave() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.5).unwrap();
        let m = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
        let chart = GeometryChart::FlatHalfspace { dim: 2 };
        let pt = chart.cotangent_point(&[0.3], &[1.2]).unwrap();
        for branch in [Branch::S, Branch::P] {
            let ph = solve_eikonal(&p, &m, &chart, &pt, branch, 6).unwrap();
            assert!((ph.coeff(0).re + 0.36).abs() < 1e-15);
            for k in 2..=6 {
                assert!(ph.coeff(k).norm() < 1e-14);
            }
            assert!(ph.residual_at(0.01).unwrap() < 1e-15);
        }
    }

    #[test]
    fn circle_second_coefficient() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.4).unwrap();
        let m = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
        let chart = circle();
        let xi = 0.8;
        let pt = chart.cotangent_point(&[0.0], &[xi]).unwrap();
        let ph = solve_eikonal(&p, &m, &chart, &pt, Branch::S, 6).unwrap();
        let expect = -xi * xi / (ph.rho * 2.0);
        assert!((ph.coeff(2) - expect).norm() < 1e-14);
    }

    #[test]
    fn circle_derivative_matches_exact_root() {
        // on the unit circle with constant medium ∂₁φ = (z²k − ξ²(1−x₁)⁻²)^{1/2}
        let p = SemiclassicalParams::from_h_theta(0.1, 0.5).unwrap();
        let m = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
        let chart = circle();
        let xi = 0.6;
        let pt = chart.cotangent_point(&[1.0], &[xi]).unwrap();
        let ph = solve_eikonal(&p, &m, &chart, &pt, Branch::P, 12).unwrap();
        let x: f64 = 0.02;
        let exact = (p.z_squared() * 0.25 - xi * xi / (1.0 - x).powi(2)).sqrt();
        assert!((ph.normal_derivative(x) - exact).norm() < 1e-14);
    }

    #[test]
    fn s_branch_with_pressure_speed_reproduces_p_branch() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.3).unwrap();
        let m = ElasticMedium::from_profiles(
            Profile { base: 1.0, harmonics: vec![], normal: vec![0.2, -0.1] },
            Profile { base: 2.0, harmonics: vec![], normal: vec![0.3] },
            Profile { base: 1.0, harmonics: vec![], normal: vec![0.5] },
        );
        // μ' = 2μ + λ as a jet
        let m2 = ElasticMedium::from_profiles(
            Profile { base: 4.0, harmonics: vec![], normal: vec![0.7, -0.2] },
            Profile::constant(0.0),
            Profile { base: 1.0, harmonics: vec![], normal: vec![0.5] },
        );
        let chart = circle();
        let pt = chart.cotangent_point(&[0.0], &[0.9]).unwrap();
        let a = solve_eikonal(&p, &m, &chart, &pt, Branch::P, 8).unwrap();
        let b = solve_eikonal(&p, &m2, &chart, &pt, Branch::S, 8).unwrap();
        for k in 0..=8 {
            assert!((a.coeff(k) - b.coeff(k)).norm() < 1e-14 * (1.0 + a.coeff(k).norm()));
        }
    }

    #[test]
    fn order_bounds() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.3).unwrap();
        let m = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
        let chart = circle();
        let pt = chart.cotangent_point(&[0.0], &[0.9]).unwrap();
        assert!(solve_eikonal(&p, &m, &chart, &pt, Branch::S, 1).is_err());
        assert!(solve_eikonal(&p, &m, &chart, &pt, Branch::S, 13).is_err());
        let ph = solve_eikonal(&p, &m, &chart, &pt, Branch::S, 4).unwrap();
        assert!(matches!(ph.residual_at(0.9), Err(Error::OutsideCollar { .. })));
    }
}
