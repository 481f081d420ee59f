//! Log-derivatives `J_n'(w)/J_n(w)` of Bessel functions of complex argument.
//!
//! Only ratios are formed, so nothing overflows for large `|Im w|`.

use crate::error::{Error, Result};
use crate::C64;

const TOLERANCE: f64 = 1e-14;
const MAX_ITERATIONS: usize = 10_000;
// small enough to act as zero, large enough that its square does not underflow
const TINY: f64 = 1e-150;

/// `J_{n+1}(w)/J_n(w)` for `n ≥ 0` by the continued fraction
/// `1/(b₁ − 1/(b₂ − 1/(b₃ − …)))`, `b_k = 2(n+k)/w`, evaluated with the
/// modified Lentz method.
pub fn bessel_ratio(n: u32, w: C64) -> Result<C64> {
    if w.norm() == 0.0 {
        return Err(Error::InvalidInput("Bessel ratio at w = 0".into()));
    }
    // r = 1/g with g = b₁ − 1/(b₂ − 1/(b₃ − …)), g evaluated by Lentz
    let tiny = C64::new(TINY, 0.0);
    let inv_w = w.inv();
    let b = |k: usize| inv_w * (2.0 * (n as f64 + k as f64));
    let mut g = b(1);
    if g.norm() < TINY {
        g = tiny;
    }
    let mut c = g;
    let mut d = C64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 2..=MAX_ITERATIONS {
        d = b(k) - d;
        if d.norm() < TINY {
            d = tiny;
        }
        c = b(k) - c.inv();
        if c.norm() < TINY {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        g *= delta;
        last = (delta - 1.0).norm();
        if last < TOLERANCE {
            return Ok(g.inv());
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, last_increment: last })
}

/// `J_n'(w)/J_n(w) = n/w − J_{n+1}(w)/J_n(w)`. Negative orders use `J_{−n} = (−1)ⁿ J_n`.
pub fn bessel_logderiv(n: i64, w: C64) -> Result<C64> {
    let m = n.unsigned_abs() as u32;
    Ok(w.inv() * m as f64 - bessel_ratio(m, w)?)
}

/// `J_n''/J_n` from the Bessel equation, given `L = J_n'/J_n`.
pub fn second_over_value(n: i64, w: C64, logderiv: C64) -> C64 {
    let nn = (n * n) as f64;
    -logderiv / w - (1.0 - nn / (w * w))
}
