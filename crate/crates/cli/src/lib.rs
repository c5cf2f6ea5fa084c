//! The `zsl` command line: zero catalogs, pairing reports, finite-field and
//! elliptic-curve checks, and the acceptance suite.

mod args;
mod commands;
mod complex_arg;
mod error;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use error::CliError;

/// Parses `argv` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code: 0 on success, 1 when
/// a check fails or a computation errors, 2 when an argument or input
/// document does not parse.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
