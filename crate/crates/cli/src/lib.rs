//! Front end for `seneca-lab`: count-table ingestion, experiment drivers and
//! CSV/JSON emission.

pub mod args;
mod commands;
pub mod error;
pub mod input;
pub mod output;

pub use args::Cli;
pub use error::{CliError, CliResult};

use args::Command;

/// Runs a parsed command line. Tabular output of `estimate` goes to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn std::io::Write) -> CliResult<()> {
    match &cli.command {
        Command::Estimate(a) => commands::estimate(a, stdout),
        Command::Simulate(a) => commands::simulate(a),
        Command::Biodiv(a) => commands::biodiv(a),
    }
}
