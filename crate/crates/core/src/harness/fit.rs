//! Log-log slope fits.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Points used (after dropping the largest abscissa).
    pub points: usize,
}

/// Ordinary least squares of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Option<SlopeFit> {
    let pts: Vec<(f64, f64)> =
        x.iter().zip(y).filter(|(a, b)| **a > 0.0 && **b > 0.0).map(|(a, b)| (a.ln(), b.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(SlopeFit { slope, intercept: my - slope * mx, points: pts.len() })
}

/// As [`loglog_slope`], without the point of largest `x` (pre-asymptotic).
pub fn loglog_slope_trimmed(x: &[f64], y: &[f64]) -> Option<SlopeFit> {
    let imax = x.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?.0;
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        x.iter().zip(y).enumerate().filter(|(i, _)| *i != imax).map(|(_, (a, b))| (*a, *b)).unzip();
    loglog_slope(&xs, &ys)
}
