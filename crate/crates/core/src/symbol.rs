//! The boundary symbol: normal roots `ρ_s`, `ρ_p`, the matrices `W₀`, `T_d`,
//! `M₂`, `M_d`, the assembled symbol `m_d` and the first-order term `q`.
//!
//! Frame conventions. With `Λ` the frame at the point (`Λν = e₁`) and
//! `ζ = −Λβ₀ = (0, ζ')`, the frame symbol is `m⁰_d(ζ) = Λ m_d Λ⁻¹` and
//!
//! ```text
//! m⁰_d(ζ) = Θ(ζ')ᵗ M_d Θ(ζ'),    m_d = 𝒥 M_d 𝒥⁻¹,   𝒥 = Λ⁻¹ Θ(ζ')ᵗ.
//! ```
//!
//! The transposes follow from `U₀(ξ) = Θᵗ U₀(ξ₁e₁ + |ξ'|e₂) Θ`, which holds
//! because `Θξ̃ = |ξ'|e₂`.

use serde::Serialize;

use crate::algebra::{e11, lambda_frame, pi_p, theta_chart, u0_matrix, ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};
use crate::geometry::CotangentPoint;
use crate::medium::MediumSample;
use crate::params::SemiclassicalParams;
use crate::C64;

/// Shear (`s`) or pressure (`p`) wave family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    S,
    P,
}

impl Branch {
    pub fn speed(self, m: &MediumSample) -> f64 {
        match self {
            Self::S => m.c_s(),
            Self::P => m.c_p(),
        }
    }

    pub fn k(self, m: &MediumSample) -> f64 {
        m.n / self.speed(m)
    }
}

/// Principal root of `−r₀ + z²k`. `Im ρ > 0` whenever `Im z² > 0`.
pub fn normal_root(z: C64, r0: f64, k: f64) -> C64 {
    (z * z * k - r0).sqrt()
}

pub fn rho(params: &SemiclassicalParams, sample: &MediumSample, r0: f64, branch: Branch) -> C64 {
    normal_root(params.z(), r0, branch.k(sample))
}

/// `(ρ_s, ρ_p)`.
pub fn roots(params: &SemiclassicalParams, sample: &MediumSample, r0: f64) -> (C64, C64) {
    (rho(params, sample, r0, Branch::S), rho(params, sample, r0, Branch::P))
}

/// Tangential gradient of `ρ = (−r₀ + z²k)^{1/2}` by the chain rule.
pub fn rho_gradient(
    params: &SemiclassicalParams,
    sample: &MediumSample,
    point: &CotangentPoint,
    branch: Branch,
) -> Vec<C64> {
    let rho = rho(params, sample, point.r0, branch);
    let (c, gc) = match branch {
        Branch::S => (sample.c_s(), sample.grad_c_s()),
        Branch::P => (sample.c_p(), sample.grad_c_p()),
    };
    let gk = sample.grad_k(c, &gc);
    let z2 = params.z_squared();
    point.grad_r0.iter().zip(&gk).map(|(&dr, &dk)| (z2 * dk - dr) / (rho * 2.0)).collect()
}

/// `ζ = −Λβ₀` (its first component vanishes up to rounding and is set to 0).
pub fn zeta(lambda: &ComplexMatrix, beta0: &[f64]) -> Vec<f64> {
    let z = lambda.apply(&ComplexVector::from_real(beta0));
    let mut out: Vec<f64> = z.0.iter().map(|c| -c.re).collect();
    out[0] = 0.0;
    out
}

/// `W₀ = U₀ᵗ(ρ_s e₁ + ζ) + (ρ_p − ρ_s) e₁⊗e₁`.
pub fn w0_matrix(rho_s: C64, rho_p: C64, zeta: &[f64]) -> Result<ComplexMatrix> {
    let d = zeta.len();
    let mut v = ComplexVector::from_real(zeta);
    v[0] += rho_s;
    let w = u0_matrix(&v)?.transpose();
    Ok(&w + &e11(d).scale(rho_p - rho_s))
}

/// `T₂(ζ₂) = (r₀ + ρ_sρ_p)⁻¹ [[ρ_s, ζ₂], [−ζ₂, ρ_p]]`, `r₀ = ζ₂²`.
pub fn t2_matrix(rho_s: C64, rho_p: C64, zeta2: f64) -> Result<ComplexMatrix> {
    let den = zeta2 * zeta2 + rho_s * rho_p;
    if den.norm() == 0.0 {
        return Err(Error::Singular("r0 + rho_s rho_p = 0".into()));
    }
    let s = den.inv();
    let z2 = C64::new(zeta2, 0.0);
    ComplexMatrix::from_rows(&[vec![rho_s * s, z2 * s], vec![-z2 * s, rho_p * s]])
}

/// Closed-form `T_d = W₀⁻¹ = Θᵗ [T̃₂(|ζ|) + ρ_s⁻¹ Σ_{j≥3} e_j⊗e_j] Θ`.
pub fn t_matrix(rho_s: C64, rho_p: C64, zeta: &[f64]) -> Result<ComplexMatrix> {
    let d = zeta.len();
    let norm = zeta[1..].iter().map(|a| a * a).sum::<f64>().sqrt();
    if d == 2 {
        return t2_matrix(rho_s, rho_p, zeta[1]);
    }
    let mut core = t2_matrix(rho_s, rho_p, norm)?.embed(d);
    for j in 2..d {
        core[(j, j)] = rho_s.inv();
    }
    conjugate_by_theta(&core, &zeta[1..])
}

/// `(W₀, T_d)` at `ζ = √r₀ e₂`.
pub fn w0_and_t(rho_s: C64, rho_p: C64, r0: f64, d: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut z = vec![0.0; d];
    z[1] = r0.max(0.0).sqrt();
    Ok((w0_matrix(rho_s, rho_p, &z)?, t_matrix(rho_s, rho_p, &z)?))
}

/// `Θ(ζ')ᵗ A Θ(ζ')`, or `A` when `ζ' = 0`.
fn conjugate_by_theta(a: &ComplexMatrix, zeta_prime: &[f64]) -> Result<ComplexMatrix> {
    if zeta_prime.iter().all(|&x| x == 0.0) {
        return Ok(a.clone());
    }
    let theta = theta_chart(zeta_prime)?.matrix;
    Ok(&(&theta.transpose() * a) * &theta)
}

/// `M₂` at `r₀` for `d = 2`.
pub fn principal_m2(params: &SemiclassicalParams, sample: &MediumSample, r0: f64) -> Result<ComplexMatrix> {
    let (rs, rp) = roots(params, sample, r0);
    m2_from_roots(params.z(), sample, r0.max(0.0).sqrt(), rs, rp)
}

/// `M₂` with `√r₀` replaced by a signed `ζ₂`.
fn m2_from_roots(z: C64, sample: &MediumSample, zeta2: f64, rs: C64, rp: C64) -> Result<ComplexMatrix> {
    let den = zeta2 * zeta2 + rs * rp;
    if den.norm() == 0.0 {
        return Err(Error::Singular("r0 + rho_s rho_p = 0".into()));
    }
    let zn = z * z * sample.n / den;
    let off = zn * zeta2 - 2.0 * sample.mu * zeta2;
    ComplexMatrix::from_rows(&[vec![zn * rs, off], vec![-off, zn * rp]])
}

/// `M_d = M̃₂ + μ₀ρ_s(I_d − Ĩ₂)`.
pub fn principal_symbol_m(
    params: &SemiclassicalParams,
    sample: &MediumSample,
    r0: f64,
    d: usize,
) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let m2 = principal_m2(params, sample, r0)?;
    let mut m = m2.embed(d);
    let rs = rho(params, sample, r0, Branch::S);
    for j in 2..d {
        m[(j, j)] = rs * sample.mu;
    }
    Ok(m)
}

/// Frame symbol `m⁰_d(ζ) = Θ(ζ')ᵗ M_d Θ(ζ')` from the closed form of `M_d`.
pub fn frame_symbol(params: &SemiclassicalParams, sample: &MediumSample, zeta: &[f64]) -> Result<ComplexMatrix> {
    let d = zeta.len();
    let r0: f64 = zeta[1..].iter().map(|a| a * a).sum();
    let md = principal_symbol_m(params, sample, r0, d)?;
    if d == 2 && zeta[1] < 0.0 {
        // Θ = diag(1, −1) flips the off-diagonal signs
        let (rs, rp) = roots(params, sample, r0);
        return m2_from_roots(params.z(), sample, zeta[1], rs, rp);
    }
    conjugate_by_theta(&md, &zeta[1..])
}

/// The frame symbol assembled from the traction identity:
///
/// ```text
/// m⁰ = λζ⊗e₁ + μe₁⊗ζ + (c_sρ_s²Π_s(e₁) + c_pρ_p²Π_p(e₁)) T_d
///    + (c_sΠ_s(e₁) + c_pΠ_p(e₁)) U₀ᵗ(ζ) (ρ_sΠ_s(e₁) + ρ_pΠ_p(e₁)) T_d
/// ```
pub fn frame_symbol_assembled(
    params: &SemiclassicalParams,
    sample: &MediumSample,
    zeta: &[f64],
) -> Result<ComplexMatrix> {
    let d = zeta.len();
    let r0: f64 = zeta[1..].iter().map(|a| a * a).sum();
    let (rs, rp) = roots(params, sample, r0);
    let t = t_matrix(rs, rp, zeta)?;
    let z = ComplexVector::from_real(zeta);
    let e1 = ComplexVector::basis(d, 0);
    let p = e11(d);
    let s = &ComplexMatrix::identity(d) - &p;
    let (cs, cp) = (C64::new(sample.c_s(), 0.0), C64::new(sample.c_p(), 0.0));
    let weights = &s.scale(cs) + &p.scale(cp);
    let tangential = &crate::algebra::outer(&z, &e1)?.scale(sample.lambda.into())
        + &crate::algebra::outer(&e1, &z)?.scale(sample.mu.into());
    let diag = &(&s.scale(cs * rs * rs) + &p.scale(cp * rp * rp)) * &t;
    let ut = u0_matrix(&z)?.transpose();
    let mixed = &(&(&weights * &ut) * &(&s.scale(rs) + &p.scale(rp))) * &t;
    Ok(&(&tangential + &diag) + &mixed)
}

/// `U(ξ)ᵗ = Λᵗ U₀(Λξ)ᵗ Λ`.
pub fn u_transpose(lambda: &ComplexMatrix, xi: &ComplexVector) -> Result<ComplexMatrix> {
    Ok(crate::algebra::u_matrix(lambda, xi)?.transpose())
}

/// All symbol ingredients at one cotangent point.
#[derive(Debug, Clone)]
pub struct SymbolMatrices {
    pub rho_s: C64,
    pub rho_p: C64,
    pub r0: f64,
    pub zeta: Vec<f64>,
    /// `Λ` at the point.
    pub lambda: ComplexMatrix,
    /// Frame matrices `W₀`, `T_d = W₀⁻¹`.
    pub w0: ComplexMatrix,
    pub t_d: ComplexMatrix,
    /// Ambient `T = Λ⁻¹ T_d Λ`.
    pub t: ComplexMatrix,
    /// Canonical `M_d` (at `ζ = √r₀ e₂`).
    pub md: ComplexMatrix,
    /// `m⁰_d(ζ) = Λ m_d Λ⁻¹`.
    pub m0: ComplexMatrix,
    /// The symbol `m_d` in ambient coordinates.
    pub m: ComplexMatrix,
    /// `𝒥 = Λ⁻¹ Θ(ζ')ᵗ`, so that `m_d = 𝒥 M_d 𝒥⁻¹`.
    pub jacobian: ComplexMatrix,
    /// The first-order term `q`.
    pub q: ComplexMatrix,
}

impl SymbolMatrices {
    pub fn evaluate(params: &SemiclassicalParams, sample: &MediumSample, point: &CotangentPoint) -> Result<Self> {
        let d = point.dim();
        if !(2..=3).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        let lambda = lambda_frame(&point.nu)?;
        let zeta = zeta(&lambda, &point.beta0);
        let r0 = point.r0;
        let (rho_s, rho_p) = roots(params, sample, r0);
        let w0 = w0_matrix(rho_s, rho_p, &zeta)?;
        let t_d = t_matrix(rho_s, rho_p, &zeta)?;
        let lt = lambda.transpose();
        let t = &(&lt * &t_d) * &lambda;
        let md = principal_symbol_m(params, sample, r0, d)?;
        let m0 = frame_symbol(params, sample, &zeta)?;
        let m = &(&lt * &m0) * &lambda;
        let theta = if zeta[1..].iter().all(|&x| x == 0.0) {
            ComplexMatrix::identity(d)
        } else {
            theta_chart(&zeta[1..])?.matrix
        };
        let jacobian = &lt * &theta.transpose();
        let q = q_symbol(params, sample, point, &lambda, &t)?;
        Ok(Self { rho_s, rho_p, r0, zeta, lambda, w0, t_d, t, md, m0, m, jacobian, q })
    }
}

/// `q = −i (c_sΠ_s(ν) + c_pΠ_p(ν)) Uᵗ(γ∇̃(ρ_p − ρ_s)) Π_p(ν) T`.
pub fn q_symbol(
    params: &SemiclassicalParams,
    sample: &MediumSample,
    point: &CotangentPoint,
    lambda: &ComplexMatrix,
    t: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let d = point.dim();
    let gs = rho_gradient(params, sample, point, Branch::S);
    let gp = rho_gradient(params, sample, point, Branch::P);
    let mut g = ComplexVector::zeros(d);
    for (k, tan) in point.tangents.iter().enumerate() {
        let dk = gp[k] - gs[k];
        for i in 0..d {
            g[i] += dk * tan[i];
        }
    }
    let nu = ComplexVector::from_real(&point.nu);
    let pp = pi_p(&nu);
    let ps = &ComplexMatrix::identity(d) - &pp;
    let weights = &ps.scale(sample.c_s().into()) + &pp.scale(sample.c_p().into());
    let ut = u_transpose(lambda, &g)?;
    Ok((&(&(&weights * &ut) * &pp) * t).scale(C64::new(0.0, -1.0)))
}

/// `(r₀ + ρ_sρ_p) − z²(k_pρ_s + k_sρ_p)/(ρ_s + ρ_p)`, relative.
pub fn identity_residual_sum(z: C64, r0: f64, k_s: f64, k_p: f64) -> f64 {
    let rs = normal_root(z, r0, k_s);
    let rp = normal_root(z, r0, k_p);
    let lhs = r0 + rs * rp;
    let rhs = z * z * (k_p * rs + k_s * rp) / (rs + rp);
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm())
}

/// `(k_pρ_s − k_sρ_p)(k_pρ_s + k_sρ_p) − (k_s − k_p)((k_s + k_p)r₀ − z²k_sk_p)`, relative.
pub fn identity_residual_product(z: C64, r0: f64, k_s: f64, k_p: f64) -> f64 {
    let rs = normal_root(z, r0, k_s);
    let rp = normal_root(z, r0, k_p);
    let lhs = (k_p * rs - k_s * rp) * (k_p * rs + k_s * rp);
    let rhs = (k_s - k_p) * ((k_s + k_p) * r0 - z * z * k_s * k_p);
    // the two sides are differences of O(k²|ρ|²) terms
    let scale = (k_p * rs).norm_sqr() + (k_s * rp).norm_sqr();
    (lhs - rhs).norm() / scale.max(lhs.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn unit_medium() -> MediumSample {
        MediumSample::constant(1.0, 2.0, 1.0, 1).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert!((normal_root(c(1.0, 0.5), 0.0, 1.0) - c(1.0, 0.5)).norm() < 1e-15);
        let r = normal_root(c(1.0, 1.0), 2.0, 1.0);
        // half-angle oracle for √(−2 + 2i)
        let w = c(-2.0, 2.0);
        let m = w.norm();
        let expect = c(((m + w.re) / 2.0).sqrt(), ((m - w.re) / 2.0).sqrt());
        assert!((r - expect).norm() < 1e-15);
        assert!((r.re - 0.6436).abs() < 1e-4 && (r.im - 1.5538).abs() < 1e-4);
        assert!((r * r + 2.0 - c(1.0, 1.0) * c(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn w0_t_examples() {
        let rs = c(0.7, 0.4);
        let rp = c(0.3, 0.9);
        let (w, t) = w0_and_t(rs, rp, 2.0, 2).unwrap();
        let sq = 2f64.sqrt();
        let expect = ComplexMatrix::from_rows(&[vec![rp, c(-sq, 0.0)], vec![c(sq, 0.0), rs]]).unwrap();
        assert!(w.rel_diff(&expect, 1.0) < 1e-15);
        assert!((w.det() - (2.0 + rs * rp)).norm() < 1e-14);
        assert!((&w * &t).rel_diff(&ComplexMatrix::identity(2), 1.0) < 1e-14);

        let (_, t0) = w0_and_t(rs, rp, 0.0, 2).unwrap();
        assert!(t0.rel_diff(&ComplexMatrix::diagonal(&[rp.inv(), rs.inv()]), 1.0) < 1e-15);

        let zeta = [0.0, 1.3, -0.4];
        let w = w0_matrix(rs, rp, &zeta).unwrap();
        let t = t_matrix(rs, rp, &zeta).unwrap();
        assert!((&w * &t).rel_diff(&ComplexMatrix::identity(3), 1.0) < 1e-12);
        assert!(t.rel_diff(&w.inverse_lu().unwrap(), 1.0) < 1e-12);
    }

    #[test]
    fn m_examples() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.5).unwrap();
        let z = p.z();
        let m2 = principal_symbol_m(&p, &unit_medium(), 0.0, 2).unwrap();
        assert!(m2.rel_diff(&ComplexMatrix::diagonal(&[z * 2.0, z]), 1.0) < 1e-15);
        let s3 = MediumSample::constant(1.0, 2.0, 1.0, 2).unwrap();
        let m3 = principal_symbol_m(&p, &s3, 0.0, 3).unwrap();
        assert!(m3.rel_diff(&ComplexMatrix::diagonal(&[z * 2.0, z, z]), 1.0) < 1e-15);
    }

    #[test]
    fn closed_form_matches_traction_assembly_d2_both_signs() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.3).unwrap();
        let s = MediumSample::constant(1.3, 0.4, 0.8, 1).unwrap();
        for z2 in [-2.1, -0.4, 0.0, 0.7, 3.0] {
            let closed = frame_symbol(&p, &s, &[0.0, z2]).unwrap();
            let assembled = frame_symbol_assembled(&p, &s, &[0.0, z2]).unwrap();
            assert!(closed.rel_diff(&assembled, 1e-300) < 1e-13, "zeta2 = {z2}");
        }
    }

    #[test]
    fn closed_form_matches_traction_assembly_d3() {
        let p = SemiclassicalParams::from_h_theta(0.1, 0.6).unwrap();
        let s = MediumSample::constant(0.9, 1.7, 1.2, 2).unwrap();
        let zeta = [0.0, -1.1, 0.8];
        let closed = frame_symbol(&p, &s, &zeta).unwrap();
        let assembled = frame_symbol_assembled(&p, &s, &zeta).unwrap();
        assert!(closed.rel_diff(&assembled, 1e-300) < 1e-13);
    }

    #[test]
    fn identities_hold() {
        for r0 in [0.0, 0.2, 1.0, 5.0, 40.0] {
            assert!(identity_residual_sum(c(1.0, 0.2), r0, 1.0, 0.25) < 1e-13);
            assert!(identity_residual_product(c(1.0, 0.2), r0, 1.0, 0.25) < 1e-13);
        }
    }

    #[test]
    fn q_vanishes_for_constant_medium_on_circle() {
        use crate::geometry::{GeometryChart, PlanarCurve};
        let chart = GeometryChart::PlanarCurve(PlanarCurve::circle(1.0).unwrap());
        let pt = chart.cotangent_point(&[0.8], &[0.9]).unwrap();
        let p = SemiclassicalParams::from_h_theta(0.05, 0.5).unwrap();
        let sm = SymbolMatrices::evaluate(&p, &unit_medium(), &pt).unwrap();
        assert_eq!(sm.q.max_abs(), 0.0);
        // m_d is similar to M_d by an orthogonal 𝒥
        let j = &sm.jacobian;
        assert!((&j.transpose() * j).rel_diff(&ComplexMatrix::identity(2), 1.0) < 1e-14);
    }
}
