//! Numerical and exact verification of matrix-integral identities over
//! unitary ensembles: Haar-measure Monte Carlo paired with closed-form
//! Schur-function and Selberg-integral reference values.

pub mod cli;
pub mod closed_forms;
pub mod ensembles;
pub mod error;
pub mod exact;
pub mod identities;
pub mod linalg;
pub mod montecarlo;
pub mod partitions;
pub mod report;
pub mod special;
pub mod symmetric;

pub use error::{Error, Result};
