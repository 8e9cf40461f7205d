//! Front end for the `rime` binary: matrix documents and the three
//! subcommands. Each command returns its standard output together with an
//! exit code so the binary stays a thin shell.

pub mod commands;
pub mod document;
pub mod error;

pub use commands::{
    generate, report, verify, Output, ReportOptions, SpecArgs, DEFAULT_N_CAP, HARD_N_CAP,
};
pub use document::{Format, MatrixDocument};
pub use error::CliError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
