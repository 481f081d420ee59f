//! Two-phase parametrix near the boundary.
//!
//! `ũ = Σ_b e^{iφ_b/h} Ψ A_b f` with `A_s = Uᵗ(γ∇φ_s)Π_s(ν)T` and
//! `A_p = Uᵗ(γ∇φ_p)Π_p(ν)T`. Here `Π_s(ν) = I − ν⊗ν`, `Π_p(ν) = ν⊗ν`.
//!
//! [`LocalParametrix::reduction`] redoes the boundary traction algebra for
//! `e^{iφ/h}a` numerically and compares it with the closed forms in
//! [`crate::symbol`].

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{pi_p, pi_s, ComplexMatrix, ComplexVector};
use crate::eikonal::{solve_eikonal, Phase};
use crate::error::{Error, Result};
use crate::geometry::{CotangentPoint, GeometryChart, PlanarCurve};
use crate::medium::{ElasticMedium, MediumSample};
use crate::params::SemiclassicalParams;
use crate::quantizer::{japanese, FourierBoundaryData};
use crate::symbol::{rho_gradient, u_transpose, Branch, SymbolMatrices};
use crate::C64;

/// `A_s`, `A_p` at one collar point together with the boundary factor `T`.
#[derive(Debug, Clone)]
pub struct AmplitudePair {
    pub a_s: ComplexMatrix,
    pub a_p: ComplexMatrix,
    pub t: ComplexMatrix,
}

impl AmplitudePair {
    /// `‖A_s + A_p − I‖_max`.
    pub fn sum_defect(&self) -> f64 {
        (&(&self.a_s + &self.a_p) - &ComplexMatrix::identity(self.a_s.dim())).max_abs()
    }
}

/// Boundary traction recomputed from the amplitudes, next to the closed forms.
#[derive(Debug, Clone, Serialize)]
pub struct DnReduction {
    pub m_check: ComplexMatrix,
    pub q_check: ComplexMatrix,
    pub m_closed: ComplexMatrix,
    pub q_closed: ComplexMatrix,
    /// `‖m_check − m_closed‖ / max(‖m_closed‖, 1)`.
    pub m_diff: f64,
    /// `‖q_check − q_closed‖ / max(‖q_closed‖, 1)`.
    pub q_diff: f64,
}

/// Amplitudes and phases at one cotangent point.
#[derive(Debug, Clone)]
pub struct LocalParametrix {
    pub point: CotangentPoint,
    pub sample: MediumSample,
    pub symbol: SymbolMatrices,
    pub phase_s: Phase,
    pub phase_p: Phase,
    grad_s: Vec<C64>,
    grad_p: Vec<C64>,
}

impl LocalParametrix {
    pub fn new(
        params: &SemiclassicalParams,
        medium: &ElasticMedium,
        chart: &GeometryChart,
        point: &CotangentPoint,
        order: usize,
    ) -> Result<Self> {
        let sample = medium.sample(&point.position)?;
        let symbol = SymbolMatrices::evaluate(params, &sample, point)?;
        let phase_s = solve_eikonal(params, medium, chart, point, Branch::S, order)?;
        let phase_p = solve_eikonal(params, medium, chart, point, Branch::P, order)?;
        Ok(Self {
            grad_s: rho_gradient(params, &sample, point, Branch::S),
            grad_p: rho_gradient(params, &sample, point, Branch::P),
            point: point.clone(),
            sample,
            symbol,
            phase_s,
            phase_p,
        })
    }

    pub fn phase(&self, branch: Branch) -> &Phase {
        match branch {
            Branch::S => &self.phase_s,
            Branch::P => &self.phase_p,
        }
    }

    fn grad_rho(&self, branch: Branch) -> &[C64] {
        match branch {
            Branch::S => &self.grad_s,
            Branch::P => &self.grad_p,
        }
    }

    /// `γ∇φ_b` at normal distance `x₁` above the point.
    pub fn gamma_grad(&self, branch: Branch, x1: f64) -> ComplexVector {
        let pt = &self.point;
        let mut v = ComplexVector::from_real(&pt.nu).scale(self.phase(branch).normal_derivative(x1));
        let g = 1.0 / (1.0 - pt.curvature * x1);
        for (k, tan) in pt.tangents.iter().enumerate() {
            let c = (self.grad_rho(branch)[k] * x1 - pt.xi[k]) * g;
            for i in 0..v.dim() {
                v.0[i] += c * tan[i];
            }
        }
        v
    }

    /// `∂₁γ∇φ_b` at `x₁ = 0`.
    pub fn gamma_grad_derivative(&self, branch: Branch) -> ComplexVector {
        let pt = &self.point;
        let mut v = ComplexVector::from_real(&pt.nu).scale(self.phase(branch).coeff(2) * 2.0);
        for (k, tan) in pt.tangents.iter().enumerate() {
            let c = self.grad_rho(branch)[k] - pt.curvature * pt.xi[k];
            for i in 0..v.dim() {
                v.0[i] += c * tan[i];
            }
        }
        v
    }

    fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let nu = ComplexVector::from_real(&self.point.nu);
        let pp = pi_p(&nu);
        (&ComplexMatrix::identity(nu.dim()) - &pp, pp)
    }

    fn amplitude_from(&self, xs: &ComplexVector, xp: &ComplexVector) -> Result<AmplitudePair> {
        let (ps, pp) = self.projectors();
        let lam = &self.symbol.lambda;
        let t = &self.symbol.t;
        Ok(AmplitudePair {
            a_s: &(&u_transpose(lam, xs)? * &ps) * t,
            a_p: &(&u_transpose(lam, xp)? * &pp) * t,
            t: t.clone(),
        })
    }

    pub fn amplitudes(&self, x1: f64) -> Result<AmplitudePair> {
        self.phase_s.residual_at(x1)?;
        self.amplitudes_unchecked(x1)
    }

    /// As [`LocalParametrix::amplitudes`], also for small negative `x₁`.
    fn amplitudes_unchecked(&self, x1: f64) -> Result<AmplitudePair> {
        self.amplitude_from(&self.gamma_grad(Branch::S, x1), &self.gamma_grad(Branch::P, x1))
    }

    /// `(A¹_s, A¹_p)`, the `x₁`-derivatives at the boundary. `Uᵗ` is linear,
    /// so these are the amplitude formula applied to `∂₁γ∇φ_b`.
    pub fn amplitude_derivatives(&self) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let pair =
            self.amplitude_from(&self.gamma_grad_derivative(Branch::S), &self.gamma_grad_derivative(Branch::P))?;
        Ok((pair.a_s, pair.a_p))
    }

    /// `max(‖Π_p(γ∇φ_s)A_s‖, ‖Π_s(γ∇φ_p)A_p‖) / max(‖A_s‖, ‖A_p‖)` at `x₁`.
    pub fn polarization_defect(&self, x1: f64) -> Result<f64> {
        let pair = self.amplitudes(x1)?;
        let gs = self.gamma_grad(Branch::S, x1);
        let gp = self.gamma_grad(Branch::P, x1);
        let a = (&pi_p(&gs).scale(1.0 / gs.square()) * &pair.a_s).max_abs();
        let b = (&pi_s(&gp).scale(1.0 / gp.square()) * &pair.a_p).max_abs();
        Ok(a.max(b) / pair.a_s.max_abs().max(pair.a_p.max_abs()))
    }

    /// Traction `a ↦ λ⟨ξ,a⟩ν + μ⟨ν,a⟩ξ + μ⟨ν,ξ⟩a` as a matrix.
    fn traction(&self, xi: &ComplexVector) -> ComplexMatrix {
        let nu = ComplexVector::from_real(&self.point.nu);
        let (mu, la) = (self.sample.mu, self.sample.lambda);
        let d = nu.dim();
        let nx = nu.dot(xi);
        ComplexMatrix::from_fn(d, |i, j| {
            let id = if i == j { nx * mu } else { C64::new(0.0, 0.0) };
            nu[i] * xi[j] * la + xi[i] * nu[j] * mu + id
        })
    }

    /// `m_d` and `q` from `−ih e^{−iφ/h}B(e^{iφ/h}a)` at `x₁ = 0`.
    pub fn reduction(&self) -> Result<DnReduction> {
        let a0 = self.amplitudes(0.0)?;
        let m_check = &(&self.traction(&self.gamma_grad(Branch::S, 0.0)) * &a0.a_s)
            + &(&self.traction(&self.gamma_grad(Branch::P, 0.0)) * &a0.a_p);
        let (a1s, a1p) = self.amplitude_derivatives()?;
        let a1 = &a1s + &a1p;
        // normal-derivative part of the traction: (λ+μ)⟨ν,a¹⟩ν + μa¹
        let (_, pp) = self.projectors();
        let (mu, la) = (self.sample.mu, self.sample.lambda);
        let w = &pp.scale((la + mu).into()) + &ComplexMatrix::identity(pp.dim()).scale(mu.into());
        let q_check = (&w * &a1).scale(C64::new(0.0, -1.0));
        let m_closed = self.symbol.m.clone();
        let q_closed = self.symbol.q.clone();
        Ok(DnReduction {
            m_diff: m_check.rel_diff(&m_closed, 1.0),
            q_diff: q_check.rel_diff(&q_closed, 1.0),
            m_check,
            q_check,
            m_closed,
            q_closed,
        })
    }
}

/// Amplitudes at `x₁` for a point of a chart.
pub fn amplitudes(
    params: &SemiclassicalParams,
    medium: &ElasticMedium,
    chart: &GeometryChart,
    point: &CotangentPoint,
    order: usize,
    x1: f64,
) -> Result<AmplitudePair> {
    LocalParametrix::new(params, medium, chart, point, order)?.amplitudes(x1)
}

pub fn boundary_dn_reduction(
    params: &SemiclassicalParams,
    medium: &ElasticMedium,
    chart: &GeometryChart,
    point: &CotangentPoint,
    order: usize,
) -> Result<DnReduction> {
    LocalParametrix::new(params, medium, chart, point, order)?.reduction()
}

/// Settings of the collar evaluator.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParametrixOptions {
    pub order: usize,
    pub delta: f64,
    pub epsilon: f64,
    /// Finite-difference step as a multiple of `h`.
    pub fd_step: f64,
}

impl Default for ParametrixOptions {
    fn default() -> Self {
        Self { order: 6, delta: 0.05, epsilon: 0.1, fd_step: 1e-3 }
    }
}

/// `φ₀`: smooth, `1` on `[0,1]`, `0` on `[2,∞)`.
pub fn window(t: f64) -> f64 {
    fn e(x: f64) -> f64 {
        if x > 0.0 {
            (-1.0 / x).exp()
        } else {
            0.0
        }
    }
    let t = t.abs();
    if t <= 1.0 {
        1.0
    } else if t >= 2.0 {
        0.0
    } else {
        e(2.0 - t) / (e(2.0 - t) + e(t - 1.0))
    }
}

/// Field and PDE residual at one collar point `(x₁, s)`.
#[derive(Debug, Clone, Serialize)]
pub struct FieldSample {
    pub x1: f64,
    pub s: f64,
    pub u: [C64; 2],
    /// `(h²Δ_{λ,μ} + z²n)ũ` by nested central differences.
    pub residual: [C64; 2],
}

impl FieldSample {
    pub fn residual_norm(&self) -> f64 {
        (self.residual[0].norm_sqr() + self.residual[1].norm_sqr()).sqrt()
    }

    pub fn u_norm(&self) -> f64 {
        (self.u[0].norm_sqr() + self.u[1].norm_sqr()).sqrt()
    }
}

struct ModeTerm {
    n: i64,
    coeff: ComplexVector,
    local: LocalParametrix,
}

/// Parametrix for a disk with a constant medium. Amplitudes are built at
/// `s = 0` and carried around by rotation.
pub struct DiskParametrix {
    params: SemiclassicalParams,
    mu: f64,
    lambda: f64,
    n: f64,
    radius: f64,
    length: f64,
    options: ParametrixOptions,
    modes: Vec<ModeTerm>,
}

impl DiskParametrix {
    pub fn new(
        params: &SemiclassicalParams,
        medium: &ElasticMedium,
        curve: &PlanarCurve,
        data: &FourierBoundaryData,
        options: ParametrixOptions,
    ) -> Result<Self> {
        if !curve.is_circle() {
            return Err(Error::InvalidInput("the collar evaluator supports circles only".into()));
        }
        if data.dim() != 2 {
            return Err(Error::UnsupportedDimension(data.dim()));
        }
        if (data.length() - curve.length).abs() > 1e-12 * curve.length {
            return Err(Error::InvalidInput("boundary data length differs from the curve".into()));
        }
        let s0 = medium.sample(&[0.0])?;
        let probe = medium.sample(&[curve.length / 3.0])?;
        let flat_grad = |v: &[f64]| v.iter().all(|g| *g == 0.0);
        if !(flat_grad(&s0.grad_mu) && flat_grad(&s0.grad_lambda) && flat_grad(&s0.grad_n))
            || probe.mu != s0.mu
            || probe.lambda != s0.lambda
            || probe.n != s0.n
            || medium.mu.normal_jet(&[0.0], 2)[1..].iter().any(|c| *c != 0.0)
            || medium.lambda.normal_jet(&[0.0], 2)[1..].iter().any(|c| *c != 0.0)
            || medium.density.normal_jet(&[0.0], 2)[1..].iter().any(|c| *c != 0.0)
        {
            return Err(Error::InvalidMedium("the collar evaluator needs a constant medium".into()));
        }
        let chart = GeometryChart::PlanarCurve(curve.clone());
        let h = params.h();
        let modes = data
            .mode_range()
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter_map(|n| {
                let coeff = data.mode(n).ok()?.clone();
                if coeff.max_abs() == 0.0 {
                    return None;
                }
                Some((n, coeff))
            })
            .map(|(n, coeff)| {
                let point = chart.cotangent_point(&[0.0], &[data.frequency(n, h)])?;
                let local = LocalParametrix::new(params, medium, &chart, &point, options.order)?;
                Ok(ModeTerm { n, coeff, local })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params: *params,
            mu: s0.mu,
            lambda: s0.lambda,
            n: s0.n,
            radius: curve.radius(),
            length: curve.length,
            options,
            modes,
        })
    }

    /// Collar coordinates `(x₁, s)` of a Cartesian point (disk centred at 0).
    pub fn collar_coordinates(&self, x: [f64; 2]) -> (f64, f64) {
        let r = x[0].hypot(x[1]);
        let a = x[1].atan2(x[0]).rem_euclid(2.0 * std::f64::consts::PI);
        (self.radius - r, self.radius * a)
    }

    pub fn cartesian(&self, x1: f64, s: f64) -> [f64; 2] {
        let a = s / self.radius;
        [(self.radius - x1) * a.cos(), (self.radius - x1) * a.sin()]
    }

    /// Largest `x₁` at which `Ψ = 1` for every carried mode.
    pub fn window_limit(&self) -> f64 {
        let o = &self.options;
        self.modes
            .iter()
            .map(|t| {
                let rs = t.local.symbol.rho_s.norm().powi(3);
                let rp = t.local.symbol.rho_p.norm().powi(3);
                o.delta * japanese(t.local.point.xi[0]).powf(-o.epsilon).min(rs).min(rp)
            })
            .fold(0.5 * self.radius, f64::min)
    }

    fn cutoff(&self, term: &ModeTerm, x1: f64) -> f64 {
        let o = &self.options;
        let xi = term.local.point.xi[0];
        let rs = term.local.symbol.rho_s.norm().powi(3);
        let rp = term.local.symbol.rho_p.norm().powi(3);
        window(x1 * japanese(xi).powf(o.epsilon) / o.delta) * window(x1 / (rs * o.delta)) * window(x1 / (rp * o.delta))
    }

    /// `ũ` at a Cartesian point, Cartesian components.
    pub fn field_at(&self, x: [f64; 2]) -> Result<[C64; 2]> {
        let (x1, s) = self.collar_coordinates(x);
        let h = self.params.h();
        let a = s / self.radius;
        let (sn, cs) = a.sin_cos();
        let rot = ComplexMatrix::from_real_rows(&[vec![cs, -sn], vec![sn, cs]])?;
        let scale = 1.0 / self.length.sqrt();
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut acc = ComplexVector::zeros(2);
        for term in &self.modes {
            let psi = self.cutoff(term, x1);
            if psi == 0.0 {
                continue;
            }
            let amp = term.local.amplitudes_unchecked(x1)?;
            let es = (C64::i() * term.local.phase_s.phase_tilde(x1) / h).exp();
            let ep = (C64::i() * term.local.phase_p.phase_tilde(x1) / h).exp();
            let frame = &amp.a_s.scale(es) + &amp.a_p.scale(ep);
            let local = &(&rot * &frame) * &rot.transpose();
            let osc = C64::from_polar(scale * psi, two_pi * term.n as f64 * s / self.length);
            acc = &acc + &local.apply(&term.coeff).scale(osc);
        }
        Ok([acc[0], acc[1]])
    }

    /// Field and `(h²Δ_{λ,μ} + z²n)ũ` at `(x₁, s)`.
    pub fn sample(&self, x1: f64, s: f64) -> Result<FieldSample> {
        let h = self.params.h();
        let d = self.options.fd_step * h;
        let x = self.cartesian(x1, s);
        let f = |i: i32, j: i32| self.field_at([x[0] + i as f64 * d, x[1] + j as f64 * d]);
        let u = f(0, 0)?;
        let (e, w, n, so) = (f(1, 0)?, f(-1, 0)?, f(0, 1)?, f(0, -1)?);
        let (ne, nw, se, sw) = (f(1, 1)?, f(-1, 1)?, f(1, -1)?, f(-1, -1)?);
        let d2 = d * d;
        let mut res = [C64::new(0.0, 0.0); 2];
        let mut dxx = [C64::new(0.0, 0.0); 2];
        let mut dyy = [C64::new(0.0, 0.0); 2];
        let mut dxy = [C64::new(0.0, 0.0); 2];
        for c in 0..2 {
            dxx[c] = (e[c] - u[c] * 2.0 + w[c]) / d2;
            dyy[c] = (n[c] - u[c] * 2.0 + so[c]) / d2;
            dxy[c] = (ne[c] - nw[c] - se[c] + sw[c]) / (4.0 * d2);
        }
        // ∇div u = (∂xx u₁ + ∂xy u₂, ∂xy u₁ + ∂yy u₂)
        let grad_div = [dxx[0] + dxy[1], dxy[0] + dyy[1]];
        let z2n = self.params.z_squared() * self.n;
        for c in 0..2 {
            let lap = dxx[c] + dyy[c];
            res[c] = (lap * self.mu + grad_div[c] * (self.lambda + self.mu)) * (h * h) + u[c] * z2n;
        }
        Ok(FieldSample { x1, s, u, residual: res })
    }

    /// `−ihσ(ũ)ν` at the boundary point `s`, by central differences straddling
    /// the boundary. Cartesian components.
    pub fn boundary_traction(&self, s: f64) -> Result<[C64; 2]> {
        let h = self.params.h();
        let d = self.options.fd_step * h;
        let x = self.cartesian(0.0, s);
        let f = |i: f64, j: f64| self.field_at([x[0] + i * d, x[1] + j * d]);
        let (e, w, n, so) = (f(1.0, 0.0)?, f(-1.0, 0.0)?, f(0.0, 1.0)?, f(0.0, -1.0)?);
        // g[i][j] = ∂_i u_j
        let mut g = [[C64::new(0.0, 0.0); 2]; 2];
        for j in 0..2 {
            g[0][j] = (e[j] - w[j]) / (2.0 * d);
            g[1][j] = (n[j] - so[j]) / (2.0 * d);
        }
        let div = g[0][0] + g[1][1];
        let a = s / self.radius;
        let nu = [-a.cos(), -a.sin()];
        let mut t = [C64::new(0.0, 0.0); 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut sigma = (g[i][j] + g[j][i]) * self.mu;
                if i == j {
                    sigma += div * self.lambda;
                }
                t[i] += sigma * nu[j];
            }
        }
        let f = C64::new(0.0, -h);
        Ok([t[0] * f, t[1] * f])
    }

    /// Evaluates on a list of `(x₁, s)` points with `0 ≤ x₁ ≤` [`Self::window_limit`].
    pub fn evaluate(&self, grid: &[(f64, f64)]) -> Result<Vec<FieldSample>> {
        let limit = self.window_limit();
        if let Some(&(x1, _)) = grid.iter().find(|(x1, _)| !(0.0..=limit).contains(x1)) {
            return Err(Error::OutsideCollar { x1, limit });
        }
        grid.par_iter().map(|&(x1, s)| self.sample(x1, s)).collect()
    }

    /// `max_j |ũ(0, s_j) − f(s_j)| / max_j |f(s_j)|` on `m` boundary points.
    pub fn trace_error(&self, data: &FourierBoundaryData, m: usize) -> Result<f64> {
        let f = data.synthesize(m)?;
        let grid = f.grid();
        let mut err = 0.0f64;
        let mut scale = 0.0f64;
        for (s, v) in grid.iter().zip(&f.values) {
            let u = self.field_at(self.cartesian(0.0, *s))?;
            err = err.max((u[0] - v[0]).norm().max((u[1] - v[1]).norm()));
            scale = scale.max(v.max_abs());
        }
        Ok(err / scale.max(f64::MIN_POSITIVE))
    }
}

/// Evaluates `ũ` and its PDE residual on `(x₁, s)` collar points of a disk.
pub fn evaluate_parametrix(
    params: &SemiclassicalParams,
    medium: &ElasticMedium,
    curve: &PlanarCurve,
    data: &FourierBoundaryData,
    grid: &[(f64, f64)],
    options: ParametrixOptions,
) -> Result<Vec<FieldSample>> {
    DiskParametrix::new(params, medium, curve, data, options)?.evaluate(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> GeometryChart {
        GeometryChart::PlanarCurve(PlanarCurve::circle(1.0).unwrap())
    }

    #[test]
    fn normal_incidence_split() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.3).unwrap();
        let m = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
        let chart = GeometryChart::FlatHalfspace { dim: 3 };
        let pt = chart.cotangent_point(&[0.0, 0.0], &[0.0, 0.0]).unwrap();
        let a = amplitudes(&p, &m, &chart, &pt, 6, 0.0).unwrap();
        let ps = &ComplexMatrix::identity(3) - &crate::algebra::e11(3);
        assert!((&a.a_s - &ps).max_abs() < 1e-14);
        assert!((&a.a_p - &crate::algebra::e11(3)).max_abs() < 1e-14);
    }

    #[test]
    fn sum_and_polarization() {
        let p = SemiclassicalParams::from_h_theta(0.05, 0.2).unwrap();
        let m = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
        let chart = circle();
        let pt = chart.cotangent_point(&[0.7], &[0.8]).unwrap();
        let lp = LocalParametrix::new(&p, &m, &chart, &pt, 6).unwrap();
        assert!(lp.amplitudes(0.0).unwrap().sum_defect() < 1e-12);
        assert!(lp.polarization_defect(0.01).unwrap() < 1e-10);
    }

    #[test]
    fn m_reduction_matches_closed_form() {
        let p = SemiclassicalParams::from_h_theta(0.05, 0.2).unwrap();
        let m = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
        for xi in [-1.7, -0.4, 0.3, 1.2, 2.5] {
            let chart = circle();
            let pt = chart.cotangent_point(&[0.3], &[xi]).unwrap();
            let r = boundary_dn_reduction(&p, &m, &chart, &pt, 6).unwrap();
            assert!(r.m_diff < 1e-12, "xi {xi}: {}", r.m_diff);
        }
        let chart = GeometryChart::FlatHalfspace { dim: 3 };
        let pt = chart.cotangent_point(&[0.0, 0.0], &[0.6, -1.1]).unwrap();
        let r = boundary_dn_reduction(&p, &m, &chart, &pt, 6).unwrap();
        assert!(r.m_diff < 1e-11);
        assert!(r.q_check.max_abs() < 1e-14 && r.q_closed.max_abs() < 1e-14);
    }

    #[test]
    fn window_shape() {
        assert_eq!(window(0.5), 1.0);
        assert_eq!(window(2.5), 0.0);
        assert!((window(1.5) - 0.5).abs() < 1e-15);
        assert!(window(1.2) > window(1.8));
    }
}
