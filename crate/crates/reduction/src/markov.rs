//! Lag-one transition statistics and their rate-matrix approximation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::binning::Sequence;
use crate::error::{ReductionError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEstimate {
    pub counts: Vec<Vec<u64>>,
    /// Row-normalized counts; empty rows stay in place.
    pub p: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovChainEstimate {
    pub states: usize,
    pub dt: f64,
    pub conditions: BTreeMap<String, ConditionEstimate>,
}

/// Generator matrix `(γ_ij)` with nonnegative off-diagonal rates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateMatrix(pub Vec<Vec<f64>>);

fn normalize(counts: &[Vec<u64>]) -> Vec<Vec<f64>> {
    counts
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let total: u64 = row.iter().sum();
            if total == 0 {
                (0..row.len()).map(|j| if i == j { 1.0 } else { 0.0 }).collect()
            } else {
                row.iter().map(|&c| c as f64 / total as f64).collect()
            }
        })
        .collect()
}

/// Counts lag-one transitions per condition over `states` states.
pub fn estimate_markov(sequences: &[Sequence], states: usize, dt: f64) -> Result<MarkovChainEstimate> {
    let mut counts: BTreeMap<String, Vec<Vec<u64>>> = BTreeMap::new();
    for seq in sequences {
        let c = counts.entry(seq.condition.clone()).or_insert_with(|| vec![vec![0; states]; states]);
        if let Some(&bad) = seq.states.iter().find(|&&s| s >= states) {
            return Err(ReductionError::StateIndex { state: bad, m: states });
        }
        for w in seq.states.windows(2) {
            c[w[0]][w[1]] += 1;
        }
    }
    let conditions = counts
        .into_iter()
        .map(|(k, counts)| {
            let p = normalize(&counts);
            (k, ConditionEstimate { counts, p })
        })
        .collect();
    Ok(MarkovChainEstimate { states, dt, conditions })
}

impl RateMatrix {
    /// `(P - 1) / δt`, with the diagonal set to minus the off-diagonal row sum.
    pub fn from_transition_matrix(p: &[Vec<f64>], dt: f64) -> Self {
        let q = p
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut out: Vec<f64> = row.iter().enumerate().map(|(j, &x)| if i == j { 0.0 } else { x / dt }).collect();
                out[i] = -out.iter().sum::<f64>();
                out
            })
            .collect();
        Self(q)
    }

    pub fn states(&self) -> usize {
        self.0.len()
    }

    /// Positive off-diagonal rates `(i, j, γ_ij)` in row-major order.
    pub fn transitions(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (i, row) in self.0.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if i != j && g > 0.0 {
                    out.push((i, j, g));
                }
            }
        }
        out
    }
}

/// Rate matrix of every condition in the estimate.
pub fn to_rate_matrix(est: &MarkovChainEstimate) -> BTreeMap<String, RateMatrix> {
    est.conditions.iter().map(|(k, c)| (k.clone(), RateMatrix::from_transition_matrix(&c.p, est.dt))).collect()
}
