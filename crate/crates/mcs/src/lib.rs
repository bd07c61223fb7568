//! File formats, batch experiments and the `mcs` command line on top of
//! `mcs-core`.

pub mod bench;
pub mod cli;
pub mod dimacs;
pub mod error;
pub mod plot;
pub mod trace;

pub use error::{CliError, Result};
