//! Laboratory for percolation and random edge-arrival processes on
//! regular graphs.
//!
//! The crate is organized bottom up:
//!
//! * [`graph`]: graph families, a tightness construction, canonical
//!   serialization.
//! * [`spectral`]: eigenvalue computation and edge-expansion
//!   certification.
//! * [`process`]: percolation samples, edge-arrival processes, hitting
//!   times, connectivity tests.
//! * [`structure`]: combinatorial checks on percolated samples (cores,
//!   rooted trees, matchings).
//! * [`harness`]: deterministic parallel Monte Carlo experiments,
//!   reports, probability sweeps.
//!
//! Everything randomized takes an explicit seed and is reproducible down
//! to the byte; see [`rng`].

pub mod error;
pub mod graph;
pub mod harness;
pub mod process;
pub mod rng;
pub mod spectral;
pub mod stats;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
