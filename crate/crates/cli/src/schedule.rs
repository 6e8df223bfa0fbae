//! JSON input schedules.
//!
//! ```json
//! [{"condition": "SET", "duration": 0.5, "inputs": {"r_bar": [22.6, 0]}},
//!  {"condition": "HOLD", "duration": 5, "inputs": {"s_bar": [22.6, 0], "r_bar": [22.6, 0]}},
//!  {"condition": "SET", "duration": 0.5}]
//! ```
//! An entry with `inputs` defines its condition; later entries may refer to
//! it by name alone. Ports not listed receive vacuum.

use std::collections::BTreeMap;

use qhdl_core::C64;
use qhdl_dynamics::Segment;
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    condition: String,
    duration: f64,
    #[serde(default)]
    inputs: Option<BTreeMap<String, [f64; 2]>>,
}

pub fn parse_schedule(text: &str, ports: &[String]) -> Result<Vec<Segment>> {
    let entries: Vec<Entry> = serde_json::from_str(text).map_err(|e| CliError::user(format!("schedule: {e}")))?;
    let mut known: BTreeMap<String, Vec<C64>> = BTreeMap::new();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        if !(e.duration >= 0.0 && e.duration.is_finite()) {
            return Err(CliError::user(format!("schedule: invalid duration {} for '{}'", e.duration, e.condition)));
        }
        let inputs = match e.inputs {
            Some(map) => {
                let mut v = vec![C64::new(0.0, 0.0); ports.len()];
                for (port, [re, im]) in map {
                    let k = ports.iter().position(|p| *p == port).ok_or_else(|| {
                        CliError::user(format!("schedule: unknown input port '{port}'; the model has {}", ports.join(", ")))
                    })?;
                    v[k] = C64::new(re, im);
                }
                known.insert(e.condition.clone(), v.clone());
                v
            }
            None => known.get(&e.condition).cloned().ok_or_else(|| {
                let names: Vec<&str> = known.keys().map(String::as_str).collect();
                CliError::user(format!(
                    "schedule: unknown condition '{}'; known conditions: {}",
                    e.condition,
                    if names.is_empty() { "none".to_string() } else { names.join(", ") }
                ))
            })?,
        };
        out.push(Segment::new(e.condition, e.duration, inputs));
    }
    Ok(out)
}
