//! The assembled reduced model and its file formats.

use std::io::{self, Write};

use qhdl_core::{ModelFile, Slh, C64};
use serde::{Deserialize, Serialize};

use crate::binning::BinningSpec;
use crate::error::Result;
use crate::markov::MarkovChainEstimate;
use crate::reduced::{drive_slh, jump_slh, output_slh, OutputBlock};
use crate::markov::RateMatrix;

#[derive(Clone, Debug)]
pub struct ReducedModel {
    pub jump: Slh,
    pub drive: Slh,
    pub output: Option<Slh>,
    pub states: usize,
    pub alpha: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedMetadata {
    #[serde(rename = "M")]
    pub m: usize,
    pub delta_t: f64,
    pub bin_width: f64,
    pub bin_origin: f64,
    /// Bin number of every state.
    pub bins: Vec<i64>,
    pub conditions: Vec<String>,
    pub alpha: [f64; 2],
}

impl ReducedModel {
    /// HOLD rates for the jump part, the drift construction for the drive.
    pub fn build(hold: &RateMatrix, alpha: C64, output: Option<(&[OutputBlock], C64)>) -> Result<Self> {
        let states = hold.states();
        Ok(Self {
            jump: jump_slh(hold)?,
            drive: drive_slh(states, alpha)?,
            output: output.map(|(blocks, beta)| output_slh(blocks, beta)).transpose()?,
            states,
            alpha,
        })
    }

    /// `drive ⊞ jump [⊞ output]` with all inputs open; channels 1 and 2 are
    /// `S̄` and `R̄`.
    pub fn triplet(&self) -> Result<Slh> {
        let mut q = self.drive.concatenate(&self.jump)?;
        if let Some(out) = &self.output {
            q = q.concatenate(out)?;
        }
        Ok(q)
    }

    pub fn port_names(&self) -> (Vec<String>, Vec<String>) {
        let mut inputs: Vec<String> = ["s_bar", "r_bar", "drive_3", "drive_4"].map(String::from).to_vec();
        inputs.extend((1..=self.jump.cdim()).map(|k| format!("jump_{k}")));
        let mut outputs: Vec<String> = (1..=4).map(|k| format!("drive_out_{k}")).collect();
        outputs.extend((1..=self.jump.cdim()).map(|k| format!("jump_out_{k}")));
        if self.output.is_some() {
            inputs.extend(["bias", "bias_vac"].map(String::from));
            outputs.extend(["out_1", "out_2"].map(String::from));
        }
        (inputs, outputs)
    }

    pub fn to_model_file(&self, est: &MarkovChainEstimate, spec: &BinningSpec) -> Result<ModelFile> {
        let (inputs, outputs) = self.port_names();
        let meta = ReducedMetadata {
            m: self.states,
            delta_t: est.dt,
            bin_width: spec.width,
            bin_origin: spec.origin,
            bins: spec.table.clone(),
            conditions: est.conditions.keys().cloned().collect(),
            alpha: [self.alpha.re, self.alpha.im],
        };
        let mut file = ModelFile::from_triplet(&self.triplet()?)?.with_ports(inputs, outputs);
        file.metadata = Some(serde_json::to_value(meta).expect("metadata serializes"));
        Ok(file)
    }
}

/// Nonzero transition counts as `condition,i,j,count` with 1-based states.
pub fn write_counts(est: &MarkovChainEstimate, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "condition,i,j,count")?;
    for (cond, c) in &est.conditions {
        for (i, row) in c.counts.iter().enumerate() {
            for (j, &n) in row.iter().enumerate() {
                if n > 0 {
                    writeln!(w, "{cond},{},{},{n}", i + 1, j + 1)?;
                }
            }
        }
    }
    Ok(())
}
