use std::path::PathBuf;

use qhdl_lang::{validate, Report};

use crate::commands::load_sources;
use crate::error::{CliError, Result};

/// Parses and validates every architecture. Returns the JSON dump when asked.
pub fn cmd_parse(files: &[PathBuf], json: bool) -> Result<String> {
    let sources = load_sources(files)?;
    let mut report = Report { items: Vec::new() };
    for src in &sources {
        for arch in &src.design.architectures {
            if let Err(ds) = validate(&src.design, &arch.entity, Some(&arch.name)) {
                report.items.extend(Report::from_all(&src.path, ds).items);
            }
        }
    }
    if !report.items.is_empty() {
        return Err(CliError::user(report));
    }
    if json {
        let designs: Vec<serde_json::Value> = sources
            .iter()
            .map(|s| serde_json::json!({"file": s.path, "design": s.design}))
            .collect();
        Ok(serde_json::to_string_pretty(&designs).expect("design serializes") + "\n")
    } else {
        Ok(String::new())
    }
}
