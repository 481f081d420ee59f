//! Semiclassical quantization on a closed curve of length `L`.
//!
//! Boundary data are stored as `f(s) = Σ_{|n|≤N} f̂_n e^{2πins/L} / √L`, so
//! `‖f‖²_{L²} = Σ |f̂_n|²`. The operator `Op_h(a)` uses the kernel
//! `e^{−i⟨x'−y',ξ'⟩/h}`, under which the mode `e^{2πins/L}` sits at the symbol
//! frequency `ξ_n = −2πhn/L`.

use std::io::{Read, Write};

use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};
use crate::C64;

/// Per-mode coefficients of a `C^d`-valued function on a closed curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierBoundaryData {
    length: f64,
    dim: usize,
    modes: usize,
    coeffs: Vec<ComplexVector>,
}

/// Point values on the uniform grid `s_j = jL/M`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySamples {
    pub length: f64,
    pub values: Vec<ComplexVector>,
}

impl BoundarySamples {
    pub fn grid(&self) -> Vec<f64> {
        let m = self.values.len();
        (0..m).map(|j| self.length * j as f64 / m as f64).collect()
    }

    /// Trapezoidal `L²` norm, exact for trigonometric polynomials of degree `< M/2`.
    pub fn l2_norm(&self) -> f64 {
        let m = self.values.len() as f64;
        let sum: f64 = self.values.iter().map(|v| v.norm().powi(2)).sum();
        (sum * self.length / m).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).max_abs()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { length: self.length, values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }
}

/// `⟨ξ⟩ = (1 + ξ²)^{1/2}`.
pub fn japanese(xi: f64) -> f64 {
    (1.0 + xi * xi).sqrt()
}

impl FourierBoundaryData {
    pub fn zeros(length: f64, dim: usize, modes: usize) -> Result<Self> {
        if !(length > 0.0) || dim == 0 {
            return Err(Error::InvalidInput(format!("length {length}, dim {dim}")));
        }
        Ok(Self { length, dim, modes, coeffs: vec![ComplexVector::zeros(dim); 2 * modes + 1] })
    }

    /// A single mode `n` with vector `v`.
    pub fn single_mode(length: f64, modes: usize, n: i64, v: ComplexVector) -> Result<Self> {
        let mut f = Self::zeros(length, v.dim(), modes)?;
        f.set_mode(n, v)?;
        Ok(f)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn mode_range(&self) -> impl Iterator<Item = i64> {
        let m = self.modes as i64;
        -m..=m
    }

    fn index(&self, n: i64) -> Result<usize> {
        if n.unsigned_abs() as usize > self.modes {
            return Err(Error::InvalidInput(format!("mode {n} outside |n| <= {}", self.modes)));
        }
        Ok((n + self.modes as i64) as usize)
    }

    pub fn mode(&self, n: i64) -> Result<&ComplexVector> {
        Ok(&self.coeffs[self.index(n)?])
    }

    pub fn set_mode(&mut self, n: i64, v: ComplexVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        let i = self.index(n)?;
        self.coeffs[i] = v;
        Ok(())
    }

    /// Symbol frequency of mode `n`: `ξ_n = −2πhn/L`.
    pub fn frequency(&self, n: i64, h: f64) -> f64 {
        -2.0 * std::f64::consts::PI * h * n as f64 / self.length
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm().powi(2)).sum::<f64>().sqrt()
    }

    /// `‖f‖_{H_h^s} = (Σ ⟨ξ_n⟩^{2s} |f̂_n|²)^{1/2}`.
    pub fn hs_norm(&self, s: f64, h: f64) -> f64 {
        self.mode_range()
            .zip(&self.coeffs)
            .map(|(n, v)| japanese(self.frequency(n, h)).powf(2.0 * s) * v.norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Coefficients from samples on `s_j = jL/M`; needs `M ≥ 2N + 1`.
    pub fn analyze(length: f64, samples: &[ComplexVector], modes: usize) -> Result<Self> {
        let m = samples.len();
        if m < 2 * modes + 1 {
            return Err(Error::InvalidInput(format!("{m} samples cannot resolve {modes} modes")));
        }
        let dim = samples[0].dim();
        let mut out = Self::zeros(length, dim, modes)?;
        let fft = FftPlanner::new().plan_fft_forward(m);
        let scale = length.sqrt() / m as f64;
        for c in 0..dim {
            let mut buf: Vec<C64> = samples.iter().map(|v| v[c]).collect();
            fft.process(&mut buf);
            for n in out.mode_range().collect::<Vec<_>>() {
                let k = n.rem_euclid(m as i64) as usize;
                let i = out.index(n)?;
                out.coeffs[i][c] = buf[k] * scale;
            }
        }
        Ok(out)
    }

    /// Samples on `M` uniform points.
    pub fn synthesize(&self, m: usize) -> Result<BoundarySamples> {
        if m < 2 * self.modes + 1 {
            return Err(Error::InvalidInput(format!("{m} points cannot carry {} modes", self.modes)));
        }
        let fft = FftPlanner::new().plan_fft_inverse(m);
        let scale = 1.0 / self.length.sqrt();
        let mut values = vec![ComplexVector::zeros(self.dim); m];
        for c in 0..self.dim {
            let mut buf = vec![C64::new(0.0, 0.0); m];
            for (n, v) in self.mode_range().zip(&self.coeffs) {
                buf[n.rem_euclid(m as i64) as usize] += v[c];
            }
            fft.process(&mut buf);
            for (j, b) in buf.into_iter().enumerate() {
                values[j][c] = b * scale;
            }
        }
        Ok(BoundarySamples { length: self.length, values })
    }

    /// Exact diagonal action of an `x'`-independent symbol.
    pub fn apply_multiplier<F>(&self, h: f64, symbol: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<ComplexMatrix>,
    {
        let mut out = self.clone();
        for (i, n) in self.mode_range().enumerate() {
            let a = symbol(self.frequency(n, h))?;
            out.coeffs[i] = a.apply(&self.coeffs[i]);
        }
        Ok(out)
    }

    /// `Op_h(a) f` at `s_j = jL/M` for a symbol depending on `(s, ξ')`, by
    /// direct summation over the carried modes.
    pub fn apply_symbol<F>(&self, h: f64, m: usize, symbol: F) -> Result<BoundarySamples>
    where
        F: Fn(f64, f64) -> Result<ComplexMatrix> + Sync,
    {
        let two_pi = 2.0 * std::f64::consts::PI;
        let scale = 1.0 / self.length.sqrt();
        let active: Vec<(i64, &ComplexVector)> =
            self.mode_range().zip(&self.coeffs).filter(|(_, v)| v.max_abs() > 0.0).collect();
        let values = (0..m)
            .into_par_iter()
            .map(|j| {
                let s = self.length * j as f64 / m as f64;
                let mut acc = ComplexVector::zeros(self.dim);
                for &(n, v) in &active {
                    let a = symbol(s, self.frequency(n, h))?;
                    let phase = C64::from_polar(scale, two_pi * n as f64 * s / self.length);
                    acc = &acc + &a.apply(v).scale(phase);
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundarySamples { length: self.length, values })
    }

    /// CSV with header `n,re_1,im_1,…,re_d,im_d`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let mut header = vec!["n".to_string()];
        for c in 1..=self.dim {
            header.push(format!("re_{c}"));
            header.push(format!("im_{c}"));
        }
        wr.write_record(&header)?;
        for (n, v) in self.mode_range().zip(&self.coeffs) {
            let mut row = vec![n.to_string()];
            for c in 0..self.dim {
                row.push(format!("{:e}", v[c].re));
                row.push(format!("{:e}", v[c].im));
            }
            wr.write_record(&row)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(length: f64, r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let dim = (rd.headers()?.len() - 1) / 2;
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                rec[i].trim().parse::<f64>().map_err(|e| Error::Config(format!("bad number {:?}: {e}", &rec[i])))
            };
            let n = rec[0].trim().parse::<i64>().map_err(|e| Error::Config(format!("bad mode: {e}")))?;
            let v = ComplexVector(
                (0..dim).map(|c| Ok(C64::new(parse(1 + 2 * c)?, parse(2 + 2 * c)?))).collect::<Result<_>>()?,
            );
            rows.push((n, v));
        }
        let modes = rows.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        let mut out = Self::zeros(length, dim, modes)?;
        for (n, v) in rows {
            out.set_mode(n, v)?;
        }
        Ok(out)
    }
}
