use qhdl_core::{render_text, simplify};
use qhdl_lang::{synthesize_entity, CompileError};

use crate::args::{Format, Target};
use crate::commands::load_sources;
use crate::error::Result;

pub fn cmd_synth(target: &Target, format: Format) -> Result<String> {
    let sources = load_sources(&target.files)?;
    let src = sources
        .iter()
        .find(|s| s.design.entity(&target.entity).is_some())
        .ok_or_else(|| CompileError::UnknownEntity(target.entity.clone()))?;
    let (_, expr) = synthesize_entity(src, &target.entity, target.arch.as_deref())?;
    let expr = simplify(&expr);
    Ok(match format {
        Format::Text => render_text(&expr) + "\n",
        Format::Json => expr.to_json() + "\n",
    })
}
