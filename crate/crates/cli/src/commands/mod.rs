mod compile;
mod parse;
mod reduce;
mod sim;
mod synth;

pub use compile::cmd_compile;
pub use parse::cmd_parse;
pub use reduce::cmd_reduce;
pub use sim::cmd_sim;
pub use synth::cmd_synth;

use std::fs;
use std::path::{Path, PathBuf};

use qhdl_lang::Source;

use crate::error::{io_err, CliError, Result};

/// Reads and parses every file; all parse errors are reported together.
pub(crate) fn load_sources(files: &[PathBuf]) -> Result<Vec<Source>> {
    if files.is_empty() {
        return Err(CliError::user("no input files"));
    }
    let mut sources = Vec::new();
    let mut errors = Vec::new();
    for path in files {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        match Source::parse(&path.display().to_string(), &text) {
            Ok(s) => sources.push(s),
            Err(report) => errors.push(report.to_string()),
        }
    }
    if errors.is_empty() {
        Ok(sources)
    } else {
        Err(CliError::user(errors.join("\n")))
    }
}

pub(crate) fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Splits `key=value`.
pub(crate) fn key_value<'a>(text: &'a str, what: &str) -> Result<(&'a str, &'a str)> {
    text.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .filter(|(k, _)| !k.is_empty())
        .ok_or_else(|| CliError::user(format!("{what} '{text}' is not of the form key=value")))
}
