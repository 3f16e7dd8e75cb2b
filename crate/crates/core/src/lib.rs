//! Simulation of the two-parameter Brownian sheet and the Ornstein-Uhlenbeck
//! process on Wiener space, with Monte Carlo estimators for their
//! almost-sure and quasi-sure path properties.
//!
//! Every stochastic routine is a pure function of its arguments and a
//! [`Seed`]; ensembles are run through [`ensemble::mc_run`] so that results
//! never depend on the number of worker threads.

pub mod ensemble;
mod error;
pub mod geometry;
pub mod ou;
pub mod path;
pub mod pathstats;
pub mod quadrature;
pub mod rng;
pub mod sheet;
pub mod stats;
pub mod table;

pub use ensemble::{mc_run, run_replicas, EnsembleConfig, EstimateReport};
pub use error::{Error, Result};
pub use path::Path;
pub use rng::{GaussianSource, RngStream, Seed, ZeroNoise};
pub use table::{Cell, Table};
