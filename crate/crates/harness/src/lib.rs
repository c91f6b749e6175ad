//! Verification harness: experiment configuration, machine-readable
//! reports, and the suites exercising the library's identities and
//! vanishing claims over configurable grids.

pub mod config;
pub mod grid;
pub mod linalg;
pub mod report;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("geometry error: {0}")]
    Geometry(#[from] hypermeans::ball_geometry::BallGeometryError),
    #[error("harmonics error: {0}")]
    Harmonics(#[from] hypermeans::harmonics::HarmonicsError),
    #[error("radial calculus error: {0}")]
    Radial(#[from] hypermeans::radial_calculus::RadialCalculusError),
    #[error("means error: {0}")]
    Means(#[from] hypermeans::spherical_means::SphericalMeansError),
}

/// Run every suite in a fixed order, collecting reports.
pub fn run_all(cfg: &config::ExperimentConfig) -> Result<Vec<report::SuiteReport>, HarnessError> {
    Ok(vec![
        suites::algebra::run(cfg)?,
        suites::sufficiency::run(cfg)?,
        suites::necessity::run(cfg)?,
        suites::darboux::run(cfg)?,
        suites::ode::run(cfg)?,
        suites::decay::run(cfg)?,
        suites::support::run(cfg)?,
    ])
}
