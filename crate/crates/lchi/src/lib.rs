//! Command line, file formats and verification suite for `lchi-core`.
//!
//! * [`json`] and [`text`]: output encodings.
//! * [`cache`]: content-addressed result cache.
//! * [`verify`]: the identity suite behind `lchi verify` and the acceptance tests.
//! * [`commands`]: the subcommands of the `lchi` binary.

pub mod cache;
pub mod commands;
pub mod config;
pub mod json;
mod par;
pub mod soundness;
pub mod text;
pub mod verify;

pub use commands::{run_command, Command, RunError};
pub use config::{Format, RunConfig, XiSpec};
