//! Exact DN map of the constant-coefficient half-space `x₁ > 0`.
//!
//! For boundary data `f e^{i⟨k,x'⟩/h}` the solution is a sum of plane waves
//! `a e^{i⟨ξ,x⟩/h}` with `ξ = (ρ, k)` and `(h²Δ_{λ,μ} + z²n)` killing each:
//!
//! ```text
//! (μ|ξ|² − z²n) a + (λ+μ) ⟨ξ,a⟩ ξ = 0.
//! ```
//!
//! As a pencil in `ρ` this is `(Q₀ρ² + Q₁ρ + Q₂ − z²n) a = 0`. It is solved by
//! a companion linearization; the `d` roots with `Im ρ > 0` and their null
//! vectors give the decaying solutions.

use nalgebra::DMatrix;

use super::Orientation;
use crate::algebra::ComplexMatrix;
use crate::error::{Error, Result};
use crate::params::SemiclassicalParams;
use crate::C64;

/// The DN matrix for one tangential wave vector, in the frame `(e₁, e₂, …)`.
#[derive(Debug, Clone)]
pub struct HalfspaceSolution {
    pub matrix: ComplexMatrix,
    /// Decaying roots `ρ_j` (with multiplicity), sorted by `Im`.
    pub roots: Vec<C64>,
    /// Polarization of each decaying root.
    pub polarizations: Vec<Vec<C64>>,
    /// Smallest singular value of the polarization matrix over the largest.
    pub inverse_condition: f64,
}

fn pencil(mu: f64, lambda: f64, k: &[f64]) -> [DMatrix<C64>; 3] {
    let d = k.len() + 1;
    let lm = lambda + mu;
    let mut kt = vec![0.0; d];
    kt[1..].copy_from_slice(k);
    let k2: f64 = k.iter().map(|a| a * a).sum();
    let q0 = DMatrix::from_fn(d, d, |i, j| {
        let mut v = if i == j { mu } else { 0.0 };
        if i == 0 && j == 0 {
            v += lm;
        }
        C64::new(v, 0.0)
    });
    let q1 = DMatrix::from_fn(d, d, |i, j| {
        let e = |m: usize| if m == 0 { 1.0 } else { 0.0 };
        C64::new(lm * (e(i) * kt[j] + kt[i] * e(j)), 0.0)
    });
    let q2 = DMatrix::from_fn(d, d, |i, j| {
        let v = if i == j { mu * k2 } else { 0.0 };
        C64::new(v + lm * kt[i] * kt[j], 0.0)
    });
    [q0, q1, q2]
}

/// Solves the half-space problem for the physical tangential wave vector `k`.
///
/// `Inward` returns `−ih B u|_{x₁=0}` with `B` the traction along `e₁`
/// (into the domain). `Outward` returns the classical outward traction
/// `−ih(−B)` expressed in the outward frame `(−e₁, e₂, …)`.
pub fn halfspace_dn_exact(
    params: &SemiclassicalParams,
    mu: f64,
    lambda: f64,
    n: f64,
    k: &[f64],
    orientation: Orientation,
) -> Result<HalfspaceSolution> {
    if !(mu > 0.0 && lambda + mu > 0.0 && n > 0.0) {
        return Err(Error::InvalidMedium(format!("mu={mu}, lambda={lambda}, n={n}")));
    }
    let d = k.len() + 1;
    let z2n = params.z_squared() * n;
    let [q0, q1, mut q2] = pencil(mu, lambda, k);
    for i in 0..d {
        q2[(i, i)] -= z2n;
    }
    let q0_inv = q0.clone().try_inverse().ok_or_else(|| Error::Singular("Q0".into()))?;
    let mut comp = DMatrix::<C64>::zeros(2 * d, 2 * d);
    let a = -(&q0_inv * &q2);
    let b = -(&q0_inv * &q1);
    for i in 0..d {
        comp[(i, d + i)] = C64::new(1.0, 0.0);
        for j in 0..d {
            comp[(d + i, j)] = a[(i, j)];
            comp[(d + i, d + j)] = b[(i, j)];
        }
    }
    let schur = nalgebra::linalg::Schur::new(comp);
    let (_, tri) = schur.unpack();
    let mut roots: Vec<C64> = (0..2 * d).map(|i| tri[(i, i)]).filter(|r| r.im > 0.0).collect();
    if roots.len() != d {
        return Err(Error::Singular(format!("expected {d} decaying roots, found {}", roots.len())));
    }
    roots.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());

    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.norm()));
    let mut clusters: Vec<Vec<C64>> = Vec::new();
    for r in roots {
        match clusters.iter_mut().find(|c| (c[0] - r).norm() <= 1e-6 * scale) {
            Some(c) => c.push(r),
            None => clusters.push(vec![r]),
        }
    }

    let mut all_roots = Vec::with_capacity(d);
    let mut polarizations = Vec::with_capacity(d);
    for cluster in &clusters {
        let m = cluster.len();
        let rho: C64 = cluster.iter().sum::<C64>() / m as f64;
        let q = &q0 * (rho * rho) + &q1 * rho + &q2;
        let svd = q.svd(false, true);
        let vt = svd.v_t.ok_or_else(|| Error::Singular("SVD failed".into()))?;
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| svd.singular_values[i].partial_cmp(&svd.singular_values[j]).unwrap());
        for &idx in order.iter().take(m) {
            // rows of Vᴴ are conjugated right singular vectors
            let v: Vec<C64> = (0..d).map(|j| vt[(idx, j)].conj()).collect();
            polarizations.push(v);
            all_roots.push(rho);
        }
    }

    let mut disp = DMatrix::<C64>::zeros(d, d);
    let mut trac = DMatrix::<C64>::zeros(d, d);
    for (col, (rho, a)) in all_roots.iter().zip(&polarizations).enumerate() {
        let mut xi = vec![*rho];
        xi.extend(k.iter().map(|&x| C64::new(x, 0.0)));
        let xa: C64 = xi.iter().zip(a).map(|(x, y)| x * y).sum();
        for i in 0..d {
            disp[(i, col)] = a[i];
            // −ih B(a e^{iξ·x/h}) = λ⟨ξ,a⟩e₁ + μ(a₁ξ + ξ₁a)
            let mut t = mu * (a[0] * xi[i] + xi[0] * a[i]);
            if i == 0 {
                t += lambda * xa;
            }
            trac[(i, col)] = t;
        }
    }
    let sv = disp.clone().singular_values();
    let inverse_condition = sv.min() / sv.max();
    let lu = disp.lu();
    let inv = lu.try_inverse().ok_or_else(|| Error::Singular("polarization matrix".into()))?;
    let dn = trac * inv;
    let mut matrix = ComplexMatrix::from_nalgebra(&dn);
    if orientation == Orientation::Outward {
        // flip the traction sign and express in the frame (−e₁, e₂, …)
        let mut f = ComplexMatrix::identity(d);
        f[(0, 0)] = C64::new(-1.0, 0.0);
        matrix = (&(&f * &matrix) * &f).scale(C64::new(-1.0, 0.0));
    }
    Ok(HalfspaceSolution { matrix, roots: all_roots, polarizations, inverse_condition })
}
