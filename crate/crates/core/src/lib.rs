//! Threshold-cascade laboratory.
//!
//! Random-graph generators (Erdős–Rényi, Waxman, Barabási–Albert, Price),
//! synchronous threshold dynamics, and a reproducible Monte Carlo harness
//! for measuring how network structure shapes the frequency and size of
//! global cascades.

pub mod cascade;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod io;
mod par;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use rng::RngStream;
