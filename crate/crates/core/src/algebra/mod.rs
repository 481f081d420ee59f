//! Dense complex `d x d` algebra.
//!
//! Pairings are bilinear (no conjugation): `⟨ξ,g⟩ = Σ ξ_j g_j`, `ξ² = ⟨ξ,ξ⟩`.
//! The tensor `ξ ⊗ η` acts by `(ξ ⊗ η) g = ⟨ξ,g⟩ η`, so as a matrix it is
//! `η ξᵀ` (row index from `η`, column index from `ξ`).

mod frames;
mod matrix;

pub use frames::*;
pub use matrix::{ComplexMatrix, ComplexVector};
