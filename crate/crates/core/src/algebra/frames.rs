//! The `U₀` family, `ℳ_d = U₀ + η₁ e₁⊗e₁` with its closed-form inverse, the
//! rotation charts `Θ(ξ')` and the boundary frame `Λ`.

use super::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};
use crate::C64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, got: b });
    }
    Ok(())
}

/// `ξ ⊗ η`, the matrix with `(ξ ⊗ η) g = ⟨ξ,g⟩ η`.
pub fn outer(xi: &ComplexVector, eta: &ComplexVector) -> Result<ComplexMatrix> {
    outer_with(xi, eta, false)
}

/// `outer` with an optional transposition of the convention. Only the
/// negative-control harness path sets `transposed`.
pub fn outer_with(xi: &ComplexVector, eta: &ComplexVector, transposed: bool) -> Result<ComplexMatrix> {
    check_dims(xi.dim(), eta.dim())?;
    let (row, col) = if transposed { (xi, eta) } else { (eta, xi) };
    Ok(ComplexMatrix::from_fn(xi.dim(), |i, j| row[i] * col[j]))
}

/// `U₀(ξ) = ξ₁ I + Σ_{j≥2} ξ_j (e_j⊗e₁ − e₁⊗e_j)`.
pub fn u0_matrix(xi: &ComplexVector) -> Result<ComplexMatrix> {
    u0_matrix_with(xi, false)
}

pub fn u0_matrix_with(xi: &ComplexVector, transposed: bool) -> Result<ComplexMatrix> {
    let d = xi.dim();
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut m = ComplexMatrix::identity(d).scale(xi[0]);
    for j in 1..d {
        let ej = ComplexVector::basis(d, j);
        let e1 = ComplexVector::basis(d, 0);
        let a = outer_with(&ej, &e1, transposed)?;
        let b = outer_with(&e1, &ej, transposed)?;
        m = &m + &(&a - &b).scale(xi[j]);
    }
    Ok(m)
}

/// `Z₀(ξ) = U₀(ξ) U₀ᵗ(ξ)`.
pub fn z0_matrix(xi: &ComplexVector) -> Result<ComplexMatrix> {
    let u = u0_matrix(xi)?;
    Ok(&u * &u.transpose())
}

/// `ℳ_d(ξ, η₁) = U₀(ξ) + η₁ e₁⊗e₁`.
pub fn m_matrix(xi: &ComplexVector, eta1: C64) -> Result<ComplexMatrix> {
    let mut m = u0_matrix(xi)?;
    m[(0, 0)] += eta1;
    Ok(m)
}

/// Closed form `det ℳ_d = (ξ² + ξ₁η₁) ξ₁^{d−2}`.
pub fn det_m(xi: &ComplexVector, eta1: C64) -> C64 {
    let d = xi.dim() as i32;
    (xi.square() + xi[0] * eta1) * xi[0].powi(d - 2)
}

/// `ℳ₂⁻¹ = (ξ² + ξ₁η₁)⁻¹ [[ξ₁, −ξ₂], [ξ₂, ξ₁ + η₁]]`.
pub fn invert_m2(xi1: C64, xi2: C64, eta1: C64) -> Result<ComplexMatrix> {
    let den = xi1 * xi1 + xi2 * xi2 + xi1 * eta1;
    if den == ZERO {
        return Err(Error::Singular("xi^2 + xi_1 eta_1 = 0".into()));
    }
    let s = den.inv();
    ComplexMatrix::from_rows(&[vec![xi1 * s, -xi2 * s], vec![xi2 * s, (xi1 + eta1) * s]])
}

/// Closed-form inverse of `ℳ_d(ξ, η₁)`.
///
/// For `d ≥ 3` the tangential part `ξ' = (ξ₂,…,ξ_d)` must be real; the inverse
/// is `Θᵗ [ℳ₂⁻¹(ξ₁, |ξ'|, η₁)~ + ξ₁⁻¹ Σ_{j≥3} e_j⊗e_j] Θ` with `Θ = Θ(ξ')`.
pub fn invert_m(xi: &ComplexVector, eta1: C64) -> Result<ComplexMatrix> {
    let d = xi.dim();
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    if d == 2 {
        return invert_m2(xi[0], xi[1], eta1);
    }
    if xi[0] == ZERO {
        return Err(Error::Singular("xi_1 = 0 with d >= 3".into()));
    }
    if xi.tail().iter().any(|c| c.im != 0.0) {
        return Err(Error::InvalidInput("tangential components must be real for d >= 3".into()));
    }
    let xi_prime: Vec<f64> = xi.tail().iter().map(|c| c.re).collect();
    let norm = xi_prime.iter().map(|a| a * a).sum::<f64>().sqrt();
    let mut core = invert_m2(xi[0], C64::new(norm, 0.0), eta1)?.embed(d);
    for j in 2..d {
        core[(j, j)] = xi[0].inv();
    }
    if norm == 0.0 {
        return Ok(core);
    }
    let theta = theta_chart(&xi_prime)?.matrix;
    Ok(&(&theta.transpose() * &core) * &theta)
}

/// Shape of the bound on `‖ℳ_d⁻¹‖`: `(|ξ|+|η₁|)/|ξ²+ξ₁η₁| + (d−2)/|ξ₁|`.
pub fn inverse_bound_shape(xi: &ComplexVector, eta1: C64) -> f64 {
    let d = xi.dim() as f64;
    let first = (xi.norm() + eta1.norm()) / (xi.square() + xi[0] * eta1).norm();
    if d > 2.0 {
        first + (d - 2.0) / xi[0].norm()
    } else {
        first
    }
}

/// An orthogonal `Θ(ξ')` with `Θe₁ = e₁` and `Θξ̃ = |ξ'| e₂`, where `ξ̃ = (0, ξ')`.
#[derive(Debug, Clone)]
pub struct ThetaChart {
    pub matrix: ComplexMatrix,
    /// Which chart of the atlas was used (always 0 for `d ≤ 3`).
    pub chart: usize,
}

/// Builds `Θ(ξ')` for `ξ' ∈ R^{d−1}`.
///
/// `d = 2`: `diag(1, sgn ξ₂)`. `d = 3`: the explicit rotation in the
/// `(e₂, e₃)` plane. `d ≥ 4`: `diag(1, V(w))` with `w = ξ'/|ξ'|` and `V` from
/// [`householder_to_first`].
pub fn theta_chart(xi_prime: &[f64]) -> Result<ThetaChart> {
    let d = xi_prime.len() + 1;
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let norm = xi_prime.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::InvalidInput("theta chart needs xi' != 0".into()));
    }
    match d {
        2 => {
            let s = xi_prime[0].signum();
            Ok(ThetaChart { matrix: ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, s]])?, chart: 0 })
        }
        3 => {
            let a = xi_prime[0] / norm;
            let b = xi_prime[1] / norm;
            Ok(ThetaChart {
                matrix: ComplexMatrix::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, a, b], vec![0.0, -b, a]])?,
                chart: 0,
            })
        }
        _ => {
            let w: Vec<f64> = xi_prime.iter().map(|a| a / norm).collect();
            let (v, chart) = householder_to_first(&w);
            let mut m = ComplexMatrix::identity(d);
            for i in 0..d - 1 {
                for j in 0..d - 1 {
                    m[(i + 1, j + 1)] = C64::new(v[i][j], 0.0);
                }
            }
            Ok(ThetaChart { matrix: m, chart })
        }
    }
}

/// Orthogonal `V` with `V w = e₁` for a unit vector `w ∈ R^m`.
///
/// Chart 0 (`w₁ < 0`): the reflection along `w − e₁`. Chart 1 (`w₁ ≥ 0`): the
/// reflection along `w + e₁`, which sends `w` to `−e₁`, followed by flipping
/// the first coordinate. Both keep `|v|² ≥ 2`.
pub fn householder_to_first(w: &[f64]) -> (Vec<Vec<f64>>, usize) {
    let m = w.len();
    let (chart, sign) = if w[0] < 0.0 { (0, -1.0) } else { (1, 1.0) };
    let mut v = w.to_vec();
    v[0] += sign;
    let vv: f64 = v.iter().map(|a| a * a).sum();
    let mut h = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let delta = if i == j { 1.0 } else { 0.0 };
            h[i][j] = delta - 2.0 * v[i] * v[j] / vv;
        }
    }
    if chart == 1 {
        for x in h[0].iter_mut() {
            *x = -*x;
        }
    }
    (h, chart)
}

/// `Λ` with `Λν = e₁` and `Λᵗ = Λ⁻¹`.
///
/// In the plane this is the rotation `[[ν₁, ν₂], [−ν₂, ν₁]]`, so the frame is
/// `(ν, R₉₀ν)` with `R₉₀` the counter-clockwise quarter turn. In higher
/// dimension a Householder chart is used.
pub fn lambda_frame(nu: &[f64]) -> Result<ComplexMatrix> {
    let d = nu.len();
    let norm = nu.iter().map(|a| a * a).sum::<f64>().sqrt();
    if d < 2 || (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!("nu must be a unit vector in d >= 2 (|nu| = {norm})")));
    }
    if d == 2 {
        return ComplexMatrix::from_real_rows(&[vec![nu[0], nu[1]], vec![-nu[1], nu[0]]]);
    }
    let (v, _) = householder_to_first(nu);
    ComplexMatrix::from_real_rows(&v)
}

/// `Π_p(ξ) = ξ⊗ξ`.
pub fn pi_p(xi: &ComplexVector) -> ComplexMatrix {
    ComplexMatrix::from_fn(xi.dim(), |i, j| xi[i] * xi[j])
}

/// `Π_s(ξ) = ξ² I − ξ⊗ξ`.
pub fn pi_s(xi: &ComplexVector) -> ComplexMatrix {
    &ComplexMatrix::identity(xi.dim()).scale(xi.square()) - &pi_p(xi)
}

/// `U(ξ) = Λ⁻¹ U₀(Λξ) Λ`, so that `U(ξ)ξ = ξ² ν`.
pub fn u_matrix(lambda: &ComplexMatrix, xi: &ComplexVector) -> Result<ComplexMatrix> {
    let u0 = u0_matrix(&lambda.apply(xi))?;
    Ok(&(&lambda.transpose() * &u0) * lambda)
}

/// `e₁ ⊗ e₁` in dimension `d`.
pub fn e11(d: usize) -> ComplexMatrix {
    ComplexMatrix::unit_projector(d, 0)
}

/// Commutator `AB − BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) - &(b * a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rv(x: &[f64]) -> ComplexVector {
        ComplexVector::from_real(x)
    }

    #[test]
    fn outer_examples() {
        let m = outer(&rv(&[1.0, 0.0]), &rv(&[0.0, 1.0])).unwrap();
        let g = m.apply(&rv(&[3.0, 4.0]));
        assert_eq!(g, rv(&[0.0, 3.0]));
        let p = outer(&rv(&[1.0, 0.0, 0.0]), &rv(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(p, e11(3));
        assert!(outer(&rv(&[1.0]), &rv(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn u0_examples() {
        let xi = rv(&[1.0, 2.0]);
        let u = u0_matrix(&xi).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![-2.0, 1.0]]).unwrap();
        assert_eq!(u, expect);
        assert_eq!(u.apply(&xi), rv(&[5.0, 0.0]));

        let z = z0_matrix(&rv(&[0.0, 1.0, 1.0])).unwrap();
        let expect =
            ComplexMatrix::from_real_rows(&[vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap();
        assert_eq!(z, expect);
        assert_eq!(commutator(&z, &e11(3)).max_abs(), 0.0);

        assert_eq!(u0_matrix(&rv(&[1.0, 0.0, 0.0, 0.0])).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn determinant_examples() {
        let m = m_matrix(&rv(&[1.0, 2.0]), c(3.0, 0.0)).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[vec![4.0, 2.0], vec![-2.0, 1.0]]).unwrap();
        assert_eq!(m, expect);
        assert_eq!(det_m(&rv(&[1.0, 2.0]), c(3.0, 0.0)), c(8.0, 0.0));
        assert!((m.det() - c(8.0, 0.0)).norm() < 1e-14);

        let xi = rv(&[2.0, 1.0, 1.0]);
        let m3 = m_matrix(&xi, c(1.0, 0.0)).unwrap();
        assert_eq!(det_m(&xi, c(1.0, 0.0)), c(16.0, 0.0));
        // cofactor expansion along the first row
        let e = |i, j| m3[(i, j)];
        let cof = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        assert!((cof - c(16.0, 0.0)).norm() < 1e-13);

        assert_eq!(det_m(&rv(&[1.0, 0.0, 0.0]), c(0.0, 0.0)), c(1.0, 0.0));
    }

    #[test]
    fn inverse_examples() {
        let inv = invert_m(&rv(&[1.0, 2.0]), c(3.0, 0.0)).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[vec![1.0, -2.0], vec![2.0, 4.0]]).unwrap().scale(c(0.125, 0.0));
        assert!(inv.rel_diff(&expect, 1.0) < 1e-15);

        let xi = rv(&[1.0, 3.0, 4.0]);
        let inv = invert_m(&xi, c(0.0, 0.0)).unwrap();
        let m = m_matrix(&xi, c(0.0, 0.0)).unwrap();
        assert!((&m * &inv).rel_diff(&ComplexMatrix::identity(3), 1.0) < 1e-12);

        let id = invert_m(&rv(&[1.0, 0.0, 0.0]), c(0.0, 0.0)).unwrap();
        assert_eq!(id, ComplexMatrix::identity(3));

        assert!(invert_m(&ComplexVector(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]), c(1.0, 0.0)).is_err());
        assert!(invert_m(&ComplexVector(vec![c(1.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)]), c(1.0, 0.0)).is_err());
        // ξ² + ξ₁η₁ = 1 + 1 − 2 = 0
        assert!(invert_m(&rv(&[1.0, 1.0]), c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn theta_examples() {
        let t = theta_chart(&[3.0, 4.0]).unwrap().matrix;
        let expect =
            ComplexMatrix::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 0.6, 0.8], vec![0.0, -0.8, 0.6]]).unwrap();
        assert!(t.rel_diff(&expect, 1.0) < 1e-15);
        let image = t.apply(&rv(&[0.0, 3.0, 4.0]));
        assert!((&image - &rv(&[0.0, 5.0, 0.0])).max_abs() < 1e-14);

        assert_eq!(theta_chart(&[0.7]).unwrap().matrix, ComplexMatrix::identity(2));
        let neg = theta_chart(&[-0.7]).unwrap().matrix;
        assert_eq!(neg[(1, 1)], c(-1.0, 0.0));
        assert!(theta_chart(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn householder_both_charts() {
        for w in [[0.5, 0.5, 0.5, 0.5], [-0.5, 0.5, -0.5, 0.5], [1.0, 0.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]] {
            let (v, _) = householder_to_first(&w);
            for i in 0..4 {
                let vw: f64 = (0..4).map(|j| v[i][j] * w[j]).sum();
                let target = if i == 0 { 1.0 } else { 0.0 };
                assert!((vw - target).abs() < 1e-15);
                for k in 0..4 {
                    let vvt: f64 = (0..4).map(|j| v[i][j] * v[k][j]).sum();
                    let id = if i == k { 1.0 } else { 0.0 };
                    assert!((vvt - id).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_frame(&[0.0, 1.0]).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert_eq!(l, expect);
        assert_eq!(lambda_frame(&[1.0, 0.0]).unwrap(), ComplexMatrix::identity(2));
        assert!(lambda_frame(&[1.0, 1.0]).is_err());
    }

    #[test]
    fn eq_5_9_single_case() {
        let nu = [0.6, 0.8];
        let l = lambda_frame(&nu).unwrap();
        let xi = ComplexVector(vec![c(0.3, 0.2), c(-1.1, 0.4)]);
        let u = u_matrix(&l, &xi).unwrap();
        let lhs = &(&u * &pi_p(&xi)) * &u.transpose();
        let rhs = pi_p(&rv(&nu)).scale(xi.square() * xi.square());
        assert!(lhs.rel_diff(&rhs, 1e-300) < 1e-13);
        // U(ξ)ξ = ξ²ν
        let img = u.apply(&xi);
        assert!((&img - &rv(&nu).scale(xi.square())).max_abs() < 1e-14);
    }
}
