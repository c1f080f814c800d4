//! Numeric dressing chains for the matrix-valued linear system
//!
//! ```text
//! χ′ = (−2iλ + u) χ + u Φ,     Φ′ = u χ + (2iλ + u) Φ
//! ```
//!
//! with ħ = 0 and scalar `z`. Eigenfunctions are integrated with RK4 on a
//! uniform grid; transformations, quasideterminant solution forms and
//! residuals are evaluated pointwise in parallel.

mod config;
mod grid;
mod integrate;
mod residual;
mod run;
mod transform;

use thiserror::Error;

pub use config::{DarbouxConfig, EigenpairSpec, SeedSpec, Tolerances};
pub use grid::{frobenius, matrix_from_spec, matrix_to_json, CMat, ComplexSpec, Grid, GridFunction};
pub use integrate::{integrate_linear_system, vacuum_eigenpair, Eigenpair};
pub use residual::{derivative, qpii_residual_numeric, riccati_residual_numeric, FdOrder};
pub use run::{
    integrate_all, run_config, ConfigEcho, Convergence, ConvergenceRow, DarbouxReport, LevelReport,
    PairReport, Stats,
};
pub use transform::{
    darboux_nfold, darboux_once, dress_eigenfunctions, omega, omega_array, quasidet_solution_form,
    sandwich, theta, DressingChain, OmegaKind, SINGULAR_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DarbouxError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("GridMismatch: {0}")]
    GridMismatch(String),
    #[error("Divergence: non-finite state at z = {z}")]
    Divergence { z: f64 },
    #[error("SingularEigenfunction: {what} not invertible at grid index {index} (z = {z})")]
    SingularEigenfunction { index: usize, z: f64, what: &'static str },
    #[error("NonInvertibleMinor: minor ({}, {}) singular at grid index {index} (z = {z})", .row + 1, .col + 1)]
    NonInvertibleMinor { index: usize, z: f64, row: usize, col: usize },
    #[error("LevelOrderViolation: level {requested} requested, {available} available")]
    LevelOrderViolation { requested: usize, available: usize },
    #[error("DuplicateLambda: eigenpair {} repeats an earlier spectral value", .index + 1)]
    DuplicateLambda { index: usize },
}

#[cfg(test)]
mod tests;
