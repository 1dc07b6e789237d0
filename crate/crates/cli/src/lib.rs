//! Manifest handling, presets and commands behind the `fibertorsion` binary.

pub mod commands;
pub mod error;
pub mod manifest;
pub mod preset;

pub use error::{CliError, Result};
pub use manifest::{Manifest, Model};
