//! Exact reference solvers used as oracles: the constant-coefficient
//! half-space (any `d`) and disk (`d = 2`) DN maps, plus the Bessel
//! log-derivative kernel the disk solver is built on.
//!
//! Nothing here calls into [`crate::symbol`].

pub mod bessel;
pub mod disk;
pub mod halfspace;

use serde::{Deserialize, Serialize};

/// Which way the frame normal points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, PartialOrd, Ord, Hash)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Normal into the domain; the convention of the boundary symbol.
    #[default]
    Inward,
    /// Outward normal and classical outward traction.
    Outward,
}

impl Orientation {
    /// Maps an inward frame matrix to this orientation: the outward map is
    /// `F(−M)F` with `F = diag(−1, 1, …)`.
    pub fn apply(self, m: &crate::algebra::ComplexMatrix) -> crate::algebra::ComplexMatrix {
        match self {
            Self::Inward => m.clone(),
            Self::Outward => {
                let d = m.dim();
                crate::algebra::ComplexMatrix::from_fn(d, |i, j| {
                    let s = if (i == 0) != (j == 0) { 1.0 } else { -1.0 };
                    m[(i, j)] * s
                })
            }
        }
    }
}
