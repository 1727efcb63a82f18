//! Probabilistic error cancellation for circuits under biased dephasing noise.
//!
//! Standard PEC inverts the noise after every gate and pays the product of
//! the per-gate sampling overheads. Block-PEC commutes all correction
//! Z-strings of a Pauli-Z compatible block to its end and samples once from
//! the accumulated quasi-distribution, which is never more expensive.
//!
//! Modules:
//! - [`circuit`]: gates, circuits, Z-string conjugation and classification.
//! - [`noise`]: dephasing channels and their inverses.
//! - [`pec`]: per-gate, per-block and hybrid mitigation plans.
//! - [`sim`]: exact density-matrix reference values and the Monte Carlo estimator.
//! - [`bench`]: circuit families, gain experiments and curve fits.

pub mod bench;
pub mod circuit;
pub mod error;
pub mod noise;
pub mod pec;
pub mod sim;

pub use error::{Error, Result};
