//! Maximum common subgraph (MCS) search through the association graph.
//!
//! The MCS of two undirected graphs corresponds one-to-one with the maximum
//! cliques of their association graph. This crate finds such cliques with
//! discrete replicator dynamics on the Motzkin-Straus / Bomze quadratic
//! programs, an annealed variant that sweeps a diagonal shift of the payoff
//! matrix, and maximum-independent-set kernelization on the complement graph.
//! Small exact solvers are included for verification.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command line live in the companion `mcs` crate.

#![no_std]

extern crate alloc;

pub mod annealing;
pub mod dynamics;
mod error;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod pipeline;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{AssociationGraph, Graph, VertexSet};
pub use pipeline::{solve_mcs, MCSResult, Method, SolveConfig};
