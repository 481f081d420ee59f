//! Experiment configuration, orchestration and reports.

pub mod config;
pub mod experiments;
pub mod fit;
pub mod report;

pub use config::{ExperimentConfig, ExperimentKind};
pub use experiments::run;
pub use report::{Check, Report};
