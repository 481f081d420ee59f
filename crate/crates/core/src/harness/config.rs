//! Versioned JSON experiment configuration.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::PlanarCurve;
use crate::medium::{ElasticMedium, Profile};
use crate::reference::Orientation;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    VerifyAlgebra,
    OracleHalfspace,
    ConvergeDisk,
    EikonalResidual,
    SymbolDump,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::VerifyAlgebra => "verify-algebra",
            Self::OracleHalfspace => "oracle-halfspace",
            Self::ConvergeDisk => "converge-disk",
            Self::EikonalResidual => "eikonal-residual",
            Self::SymbolDump => "symbol-dump",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MediumSpec {
    Constant { mu: f64, lambda: f64, n: f64 },
    Profiles { mu: Profile, lambda: Profile, n: Profile },
}

impl MediumSpec {
    pub fn build(&self) -> Result<ElasticMedium> {
        match self {
            Self::Constant { mu, lambda, n } => ElasticMedium::constant(*mu, *lambda, *n),
            Self::Profiles { mu, lambda, n } => Ok(ElasticMedium::from_profiles(mu.clone(), lambda.clone(), n.clone())),
        }
    }

    /// `(μ, λ, n)` for constant media.
    pub fn constants(&self) -> Result<(f64, f64, f64)> {
        match self {
            Self::Constant { mu, lambda, n } => Ok((*mu, *lambda, *n)),
            Self::Profiles { .. } => Err(Error::Config("this experiment needs a constant medium".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeometrySpec {
    Flat { dim: usize },
    Circle { radius: f64 },
    Curve { curve: PlanarCurve },
}

impl GeometrySpec {
    pub fn chart(&self) -> Result<crate::geometry::GeometryChart> {
        use crate::geometry::GeometryChart;
        Ok(match self {
            Self::Flat { dim } => GeometryChart::FlatHalfspace { dim: *dim },
            Self::Circle { radius } => GeometryChart::PlanarCurve(PlanarCurve::circle(*radius)?),
            Self::Curve { curve } => GeometryChart::PlanarCurve(curve.clone()),
        })
    }
}

/// One closed-form term `(re + i im) e^{2πi·mode·s/L}` of a boundary component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTerm {
    pub component: usize,
    pub mode: i64,
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    #[serde(default)]
    pub theta: Vec<f64>,
    #[serde(default)]
    pub h: Vec<f64>,
    /// Tangential frequencies (first component for `d > 2`).
    #[serde(default)]
    pub xi: Vec<f64>,
    /// Boundary positions `s` (curves) or first coordinate (flat).
    #[serde(default)]
    pub positions: Vec<f64>,
    /// Eikonal truncation orders.
    #[serde(default)]
    pub orders: Vec<usize>,
    /// Dimensions for the algebra and oracle suites.
    #[serde(default)]
    pub dims: Vec<usize>,
    /// Modes carried per unit `1/h`: `N = ⌈modes_per_h / h⌉`.
    #[serde(default = "default_modes_per_h")]
    pub modes_per_h: f64,
    /// Fixed `θ` for the h-sweep and fixed `h` for the θ-sweep.
    #[serde(default)]
    pub fixed_theta: Option<f64>,
    #[serde(default)]
    pub fixed_h: Option<f64>,
}

fn default_modes_per_h() -> f64 {
    8.0
}

impl Default for Grids {
    fn default() -> Self {
        Self {
            theta: Vec::new(),
            h: Vec::new(),
            xi: Vec::new(),
            positions: Vec::new(),
            orders: Vec::new(),
            dims: Vec::new(),
            modes_per_h: default_modes_per_h(),
            fixed_theta: None,
            fixed_h: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(default = "tol_algebra")]
    pub algebra: f64,
    #[serde(default = "tol_oracle")]
    pub oracle: f64,
    #[serde(default = "slope_lo")]
    pub slope_min: f64,
    #[serde(default = "slope_hi")]
    pub slope_max: f64,
    #[serde(default = "shape")]
    pub theta_shape_ratio: f64,
    #[serde(default = "flat_residual")]
    pub flat_residual: f64,
}

fn tol_algebra() -> f64 {
    1e-11
}
fn tol_oracle() -> f64 {
    1e-8
}
fn slope_lo() -> f64 {
    0.9
}
fn slope_hi() -> f64 {
    1.5
}
fn shape() -> f64 {
    10.0
}
fn flat_residual() -> f64 {
    1e-15
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebra: tol_algebra(),
            oracle: tol_oracle(),
            slope_min: slope_lo(),
            slope_max: slope_hi(),
            theta_shape_ratio: shape(),
            flat_residual: flat_residual(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DebugFlags {
    /// Use `ηξᵗ`'s transpose for `⊗` in the algebra suite (negative control).
    #[serde(default)]
    pub transposed_outer: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    /// Random instances per identity (algebra) or per grid cell.
    #[serde(default = "default_instances")]
    pub instances: usize,
    #[serde(default = "default_media")]
    pub media: Vec<MediumSpec>,
    #[serde(default = "default_geometry")]
    pub geometry: GeometrySpec,
    #[serde(default)]
    pub grids: Grids,
    /// `ε` in the regime condition `θ ≥ h^{2/5−ε}`.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub orientation: Orientation,
    #[serde(default)]
    pub boundary: Vec<BoundaryTerm>,
    #[serde(default)]
    pub debug: DebugFlags,
}

fn default_instances() -> usize {
    1000
}

fn default_media() -> Vec<MediumSpec> {
    vec![MediumSpec::Constant { mu: 1.0, lambda: 2.0, n: 1.0 }]
}

fn default_geometry() -> GeometrySpec {
    GeometrySpec::Circle { radius: 1.0 }
}

fn default_epsilon() -> f64 {
    0.01
}

impl ExperimentConfig {
    /// The built-in configuration of each experiment (the acceptance setup).
    pub fn default_for(kind: ExperimentKind) -> Self {
        let mut c = Self {
            version: CONFIG_VERSION,
            experiment: kind,
            seed: 2024,
            instances: default_instances(),
            media: default_media(),
            geometry: default_geometry(),
            grids: Grids::default(),
            epsilon: default_epsilon(),
            tolerances: Tolerances::default(),
            orientation: Orientation::Inward,
            boundary: Vec::new(),
            debug: DebugFlags::default(),
        };
        match kind {
            ExperimentKind::VerifyAlgebra => {
                c.grids.dims = vec![2, 3, 4, 5];
            }
            ExperimentKind::OracleHalfspace => {
                c.media = vec![
                    MediumSpec::Constant { mu: 1.0, lambda: 2.0, n: 1.0 },
                    MediumSpec::Constant { mu: 0.5, lambda: 3.0, n: 2.0 },
                    MediumSpec::Constant { mu: 2.0, lambda: -1.0, n: 0.7 },
                ];
                c.geometry = GeometrySpec::Flat { dim: 3 };
                c.grids.dims = vec![2, 3];
                c.grids.theta = vec![0.1, 0.3, 0.6, 1.0];
                c.grids.h = vec![1e-3];
                c.grids.xi = (0..=10).map(|k| k as f64).collect();
                c.instances = 1;
            }
            ExperimentKind::ConvergeDisk => {
                c.grids.h = (4..=9).map(|k| 0.5f64.powi(k)).collect();
                c.grids.theta = vec![0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];
                c.grids.fixed_theta = Some(0.5);
                c.grids.fixed_h = Some(0.5f64.powi(6));
                c.boundary = vec![
                    BoundaryTerm { component: 0, mode: 0, re: 1.0, im: 0.0 },
                    BoundaryTerm { component: 1, mode: 1, re: 0.5, im: -0.2 },
                    BoundaryTerm { component: 0, mode: -2, re: 0.3, im: 0.1 },
                    BoundaryTerm { component: 1, mode: 3, re: -0.2, im: 0.2 },
                ];
            }
            ExperimentKind::EikonalResidual => {
                c.grids.theta = vec![0.05, 0.1, 0.3, 0.6, 1.0];
                c.grids.xi = vec![-2.0, -0.6, 0.98, 1.7];
                c.grids.orders = vec![4, 6, 8];
                c.grids.h = vec![0.01];
            }
            ExperimentKind::SymbolDump => {
                c.grids.theta = vec![0.3];
                c.grids.h = vec![0.05];
                c.grids.xi = vec![-2.0, -1.0, 0.0, 0.5, 1.0, 2.0];
                c.grids.positions = vec![0.0];
            }
        }
        c
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> Result<String> {
        let bytes = serde_json::to_vec(self)?;
        Ok(hex::encode(Sha256::digest(&bytes)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "config version {} is not supported (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        if let Some(t) = self.grids.theta.iter().chain(&self.grids.fixed_theta).find(|t| !(**t > 0.0 && **t <= 1.0)) {
            return Err(Error::Config(format!("theta {t} outside (0, 1]")));
        }
        if self.grids.h.iter().chain(&self.grids.fixed_h).any(|h| !(*h > 0.0)) {
            return Err(Error::Config("h must be positive".into()));
        }
        if self.grids.h.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Config("h grid must be strictly decreasing".into()));
        }
        if self.media.is_empty() {
            return Err(Error::Config("at least one medium is required".into()));
        }
        if !(self.grids.modes_per_h > 0.0) {
            return Err(Error::Config("modes_per_h must be positive".into()));
        }
        if let Some(d) = self.grids.dims.iter().find(|d| !(2..=8).contains(*d)) {
            return Err(Error::Config(format!("dimension {d} outside 2..=8")));
        }
        if let Some(b) = self.boundary.iter().find(|b| b.component > 1) {
            return Err(Error::Config(format!("boundary component {} (d = 2 only)", b.component)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_and_validate() {
        for kind in [
            ExperimentKind::VerifyAlgebra,
            ExperimentKind::OracleHalfspace,
            ExperimentKind::ConvergeDisk,
            ExperimentKind::EikonalResidual,
            ExperimentKind::SymbolDump,
        ] {
            let c = ExperimentConfig::default_for(kind);
            c.validate().unwrap();
            let back = ExperimentConfig::from_json(&c.to_json().unwrap()).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.hash().unwrap(), c.hash().unwrap());
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let mut c = ExperimentConfig::default_for(ExperimentKind::ConvergeDisk);
        c.grids.h = vec![0.1, 0.2];
        assert!(c.validate().is_err());
        c.grids.h = vec![0.2, 0.1];
        c.grids.theta = vec![1.5];
        assert!(c.validate().is_err());
        let text = r#"{"version": 9, "experiment": "verify-algebra"}"#;
        assert!(matches!(ExperimentConfig::from_json(text), Err(Error::Config(_))));
        let text = r#"{"version": 1, "experiment": "verify-algebra", "bogus": 1}"#;
        assert!(ExperimentConfig::from_json(text).is_err());
    }

    #[test]
    fn minimal_json_fills_defaults() {
        let c = ExperimentConfig::from_json(r#"{"version": 1, "experiment": "symbol-dump"}"#).unwrap();
        assert_eq!(c.media, default_media());
        assert_eq!(c.grids.modes_per_h, 8.0);
        assert_eq!(c.orientation, Orientation::Inward);
    }
}
