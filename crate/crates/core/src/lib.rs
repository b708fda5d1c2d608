//! Band gaps of one-dimensional layered phononic crystals, variance-based
//! (Sobol') sensitivity analysis of the first gap, and reduced-order design
//! equations for its start and width.
//!
//! The crate is organized bottom-up:
//!
//! - [`sampling`]: seeded Latin Hypercube designs and parameter-space mapping.
//! - [`sobol`]: Monte Carlo estimators of Sobol' indices and Sobol' functions.
//! - [`phononic`]: dimensionless transfer-matrix solver and first-gap extraction.
//! - [`design`]: published design equations, scaled L2 error, surrogate fits.
//!
//! Batch evaluations run on rayon when the `parallel` feature is on (the
//! default). Results are bit-identical with or without it.

pub mod design;
pub mod error;
pub mod exec;
pub mod phononic;
pub mod report;
pub mod sampling;
pub mod sobol;

pub use error::{Error, Result};
pub use exec::Execution;
