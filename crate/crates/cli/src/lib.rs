//! Command-line driver for `polyshape`: file formats, plots and the
//! subcommands behind the `polyshape` binary.

pub mod analysis;
pub mod commands;
pub mod error;
pub mod formats;
pub mod svg;

pub use error::{exit, CliError};
