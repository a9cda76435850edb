//! Command-line front end for `flagmat-core`: a JSON matrix document format
//! and the `generate`, `factorize`, `verify`, `spectrum` and `dim` commands.

pub mod cli;
pub mod document;
mod error;
pub mod format;

pub use cli::{run, Cli};
pub use document::{DocumentKind, MatrixDocument, Meta, ParamsDocument};
pub use error::{CliError, Result};
