//! Coarse-graining of `D = ⟨a†a⟩ − ⟨b†b⟩` into discrete states.
//!
//! States are 0-based here: state `i` is the basis vector `|i+1⟩` of the
//! reduced model, and state 0 has the largest `D`.

use std::collections::BTreeSet;

use qhdl_dynamics::ExpectationTrace;
use serde::{Deserialize, Serialize};

use crate::error::{ReductionError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinningSpec {
    /// Observable names whose difference is binned.
    pub plus: String,
    pub minus: String,
    pub width: f64,
    pub origin: f64,
    /// Bin numbers `floor((D - origin) / width)` by state, descending.
    pub table: Vec<i64>,
}

/// State sequence sampled under a single input condition.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    pub condition: String,
    pub states: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoarseGrained {
    pub spec: BinningSpec,
    pub sequences: Vec<Sequence>,
}

impl BinningSpec {
    pub fn new(plus: impl Into<String>, minus: impl Into<String>, width: f64, origin: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(ReductionError::BinWidth(width));
        }
        Ok(Self { plus: plus.into(), minus: minus.into(), width, origin, table: Vec::new() })
    }

    pub fn bin(&self, d: f64) -> i64 {
        ((d - self.origin) / self.width).floor() as i64
    }

    pub fn states(&self) -> usize {
        self.table.len()
    }

    pub fn state_of_bin(&self, bin: i64) -> Option<usize> {
        self.table.iter().position(|&b| b == bin)
    }

    /// Lower edge of a state's bin.
    pub fn bin_floor(&self, state: usize) -> f64 {
        self.origin + self.table[state] as f64 * self.width
    }

    /// Adds unvisited boundary bins until the state count is `4k + 2`,
    /// alternating between the low-`D` and high-`D` ends. Returns the number
    /// of states added at the high-`D` end; existing state indices shift by
    /// that amount.
    pub fn pad_to_drive_size(&mut self) -> usize {
        let target = padded_size(self.table.len());
        let mut front = 0;
        let mut at_back = true;
        while self.table.len() < target {
            if at_back || self.table.is_empty() {
                let next = self.table.last().map_or(0, |b| b - 1);
                self.table.push(next);
            } else {
                self.table.insert(0, self.table[0] + 1);
                front += 1;
            }
            at_back = !at_back;
        }
        front
    }
}

/// Smallest `M = 4k + 2` with `k >= 1` and `M >= m`.
pub fn padded_size(m: usize) -> usize {
    let mut target = 6;
    while target < m {
        target += 4;
    }
    target
}

/// Maps every sample to its bin and splits the data into constant-condition
/// runs. Transitions across condition boundaries are dropped by splitting.
pub fn coarse_grain(traces: &[ExpectationTrace], spec: &BinningSpec) -> Result<CoarseGrained> {
    let mut raw: Vec<(String, Vec<i64>)> = Vec::new();
    let mut visited = BTreeSet::new();
    for tr in traces {
        let plus = tr.real(&spec.plus).ok_or_else(|| ReductionError::MissingObservable(spec.plus.clone()))?;
        let minus = tr.real(&spec.minus).ok_or_else(|| ReductionError::MissingObservable(spec.minus.clone()))?;
        let conditions = tr.sample_conditions();
        let mut current: Option<(String, Vec<i64>)> = None;
        for (i, cond) in conditions.iter().enumerate() {
            let cond = cond.ok_or(ReductionError::Unlabelled { index: i })?;
            let bin = spec.bin(plus[i] - minus[i]);
            visited.insert(bin);
            match &mut current {
                Some((c, bins)) if c == cond => bins.push(bin),
                _ => {
                    raw.extend(current.take());
                    current = Some((cond.to_string(), vec![bin]));
                }
            }
        }
        raw.extend(current);
    }
    if visited.is_empty() {
        return Err(ReductionError::Empty);
    }
    let mut spec = spec.clone();
    spec.table = visited.into_iter().rev().collect();
    let sequences = raw
        .into_iter()
        .map(|(condition, bins)| Sequence {
            condition,
            states: bins.iter().map(|&b| spec.state_of_bin(b).expect("visited bin")).collect(),
        })
        .collect();
    Ok(CoarseGrained { spec, sequences })
}

impl CoarseGrained {
    /// Pads the state table to `4k + 2` states, shifting the sequences.
    pub fn pad_to_drive_size(&mut self) {
        let shift = self.spec.pad_to_drive_size();
        for s in &mut self.sequences {
            for x in &mut s.states {
                *x += shift;
            }
        }
    }
}
