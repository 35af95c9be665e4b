//! Front end for `levi-schur-core`: configuration, command dispatch and
//! text/JSON reports. The binary is a thin clap wrapper around [`execute`].

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{cmd_dims, cmd_verify, execute};
pub use config::{CliError, Command, FieldSpec, OutputFormat, RunConfig, VParity};
pub use report::{Check, Report, Role};
