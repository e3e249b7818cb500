//! Coefficient-space tools for the classes `M(lambda)`, `U(lambda)`,
//! `P(lambda)`, `Omega` and `Omega_A` of normalized analytic functions on
//! the unit disk: defect series, function transforms, a catalog of radius
//! equations with a smallest-root solver, and Bohr-type quantities.

pub mod bohr_analysis;
pub mod class_operators;
pub mod cli_reporter;
pub mod error;
pub mod exec;
pub mod named;
pub mod radius_catalog;
pub mod series_core;
pub mod special_functions;
pub mod transforms;

pub use error::{Error, Result};
pub use exec::Execution;
