use std::collections::BTreeMap;
use std::path::Path;

use qhdl_core::{ModelFile, C64};
use qhdl_lang::{parse_value, FockDims, Library};

use crate::args::Target;
use crate::commands::{key_value, load_sources, write_output};
use crate::error::{CliError, Result};

pub fn parse_params(items: &[String]) -> Result<BTreeMap<String, C64>> {
    items
        .iter()
        .map(|item| {
            let (k, v) = key_value(item, "parameter")?;
            let value = parse_value(v).ok_or_else(|| CliError::user(format!("parameter {k}: cannot read '{v}' as a number")))?;
            Ok((k.to_lowercase(), value))
        })
        .collect()
}

pub fn parse_fock(items: &[String]) -> Result<FockDims> {
    let mut dims = FockDims::default();
    for item in items {
        let (k, v) = key_value(item, "Fock dimension")?;
        let n: usize = v.parse().map_err(|_| CliError::user(format!("Fock dimension for '{k}' is not a positive integer: '{v}'")))?;
        if n < 2 {
            return Err(CliError::user(format!("Fock dimension for '{k}' must be at least 2")));
        }
        if k == "*" {
            dims.default = Some(n);
        } else {
            dims.per_mode.insert(k.to_lowercase(), n);
        }
    }
    Ok(dims)
}

/// Compiles the entity and writes the model JSON; returns a residual summary.
pub fn cmd_compile(target: &Target, params: &[String], fock: &[String], out: Option<&Path>) -> Result<String> {
    let sources = load_sources(&target.files)?;
    let compiled = Library { sources: &sources }.compile(&target.entity, target.arch.as_deref(), &parse_params(params)?, &parse_fock(fock)?)?;
    let file = ModelFile::from_triplet(&compiled.model)?.with_ports(compiled.inputs.clone(), compiled.outputs.clone());
    let res = compiled.model.residuals()?;
    write_output(out, &(file.to_json() + "\n"))?;
    let dims: Vec<String> = file.space.iter().map(|m| format!("{}={}", m.label, m.dim)).collect();
    Ok(format!(
        "{}: {} channels, space [{}], unitarity residual {:.3e}, hermiticity residual {:.3e}\n",
        target.entity,
        file.n,
        dims.join(", "),
        res.unitarity,
        res.hermiticity
    ))
}
