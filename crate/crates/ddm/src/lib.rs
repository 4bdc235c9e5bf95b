//! File formats, CSV handling, benchmark sweeps and the `ddm` command-line tool built on
//! [`ddm_core`].

pub mod cli;
pub mod data;
mod error;
pub mod model_io;
pub mod report;
pub mod sweep;

pub use error::CliError;
