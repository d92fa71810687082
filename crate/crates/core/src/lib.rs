//! Simulation and analysis laboratory for the expected first hitting time
//! (EFHT) of elitist (μ+λ) evolutionary algorithms.
//!
//! The crate is split along the pipeline a study goes through:
//!
//! - [`model`]: genotypes, populations, EA configuration and the seeded
//!   random stream every stochastic operation draws from.
//! - [`problems`]: knapsack with favorably correlated weights, k-MAX-SAT and
//!   convex-position TSP, with exact enumerators for the instance quantities
//!   the bounds need.
//! - [`ea`]: the three generation-stepping engines.
//! - [`analysis`]: gain traces, zero-gain intervals and the empirical
//!   estimators of `k_low` and `α`.
//! - [`bounds`]: closed-form average-case and worst-case EFHT bounds.
//! - [`harness`]: batch orchestration, Pearson consistency checks and export.

pub mod analysis;
pub mod bounds;
pub mod ea;
mod error;
pub mod harness;
pub mod model;
pub mod problems;

pub use error::{Error, Result};
