//! Semiclassical principal symbol of the elastic Dirichlet-to-Neumann map.
//!
//! The crate builds the matrix-valued boundary symbol `m_d` of the operator
//! `-ih N(z/h)` for the isotropic Lamé system, quantizes it on closed planar
//! curves, and carries two exact reference solvers (flat half-space and disk)
//! used to validate the symbol and to measure its `O(h)` approximation rate.
//!
//! Layout:
//!
//! * [`params`] and [`medium`]: frequency bookkeeping and the elastic medium.
//! * [`algebra`]: dense complex `d x d` algebra with the bilinear `⊗` convention.
//! * [`geometry`] and [`symbol`]: cotangent points and the boundary symbol.
//! * [`taylor`], [`eikonal`], [`parametrix`]: the two-phase boundary parametrix.
//! * [`quantizer`]: Kohn–Nirenberg quantization on closed curves.
//! * [`reference`]: exact half-space and disk DN solvers, Bessel log-derivatives.
//! * [`harness`]: experiment configuration, runners and reports.

pub mod algebra;
pub mod eikonal;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod medium;
pub mod parametrix;
pub mod params;
pub mod quantizer;
pub mod reference;
pub mod symbol;
pub mod taylor;

pub use num_complex::Complex64 as C64;

pub use algebra::{ComplexMatrix, ComplexVector};
pub use error::{Error, Result};
pub use geometry::{CotangentPoint, GeometryChart, PlanarCurve};
pub use medium::{ElasticMedium, MediumSample, Profile};
pub use params::SemiclassicalParams;
pub use quantizer::{BoundarySamples, FourierBoundaryData};
pub use symbol::{Branch, SymbolMatrices};
pub use taylor::TaylorPolynomial;

/// Library version embedded in every harness report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
