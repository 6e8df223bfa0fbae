//! The `qhdl` command-line workflow: parse, synthesize, compile, simulate and
//! reduce.

pub mod args;
pub mod commands;
pub mod error;
pub mod schedule;

use args::{Cli, Command};
pub use error::{CliError, Result};

/// Runs one subcommand and returns what it prints on standard output.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Parse { files, json } => commands::cmd_parse(files, *json),
        Command::Synth { target, format } => commands::cmd_synth(target, *format),
        Command::Compile { target, params, fock, out } => {
            let summary = commands::cmd_compile(target, params, fock, out.as_deref())?;
            if out.is_some() {
                Ok(summary)
            } else {
                eprint!("{summary}");
                Ok(String::new())
            }
        }
        Command::Sim(a) => commands::cmd_sim(a),
        Command::Reduce(a) => commands::cmd_reduce(a),
    }
}
