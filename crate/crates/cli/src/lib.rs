//! Command-line surface of the `msep` tool: file formats, the synthetic
//! benchmark pipeline and the subcommands built on them.

pub mod commands;
pub mod error;
pub mod experiment;
pub mod formats;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use error::{CliError, FormatError};

/// Parses `args` (program name first) and runs the subcommand, writing its
/// report to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return out
                .write_all(e.render().to_string().as_bytes())
                .map_err(|e| CliError::io("<stdout>", e));
        }
        Err(e) => {
            return Err(CliError::Usage(
                e.render().to_string().trim_end().to_string(),
            ))
        }
    };
    commands::execute(cli.command, out)
}
