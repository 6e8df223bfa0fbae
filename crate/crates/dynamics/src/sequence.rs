//! Piecewise-constant input conditions.

use qhdl_core::{Slh, C64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Method, SimulationConfig};
use crate::error::{DynamicsError, Result};
use crate::master::MasterIntegrator;
use crate::mcwf::Trajectory;
use crate::model::Model;
use crate::state::QuantumState;
use crate::trace::{ExpectationTrace, SegmentMark};

/// Coherent amplitudes fed into every input channel for a duration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub condition: String,
    pub duration: f64,
    pub inputs: Vec<C64>,
}

impl Segment {
    pub fn new(condition: impl Into<String>, duration: f64, inputs: Vec<C64>) -> Self {
        Self { condition: condition.into(), duration, inputs }
    }
}

/// Simulates `base ◁ (W(u1) ⊞ ... ⊞ W(un))` segment by segment, carrying the
/// state across boundaries. Returns one trace for the master equation, one
/// per trajectory otherwise; `config.t_final` is replaced by the schedule
/// length.
pub fn run_input_sequence(
    base: &Slh,
    schedule: &[Segment],
    state: &QuantumState,
    config: &SimulationConfig,
) -> Result<Vec<ExpectationTrace>> {
    let segments: Vec<&Segment> = schedule.iter().filter(|s| s.duration > 0.0).collect();
    let total: f64 = segments.iter().map(|s| s.duration).sum();
    if segments.is_empty() {
        return Err(DynamicsError::Config("schedule has no segment of positive duration".into()));
    }
    let config = SimulationConfig { t_final: total, ..config.clone() };
    config.validate()?;
    let base = base.embedded()?;
    let space = base.space()?;
    let models: Vec<Model> = segments
        .iter()
        .map(|s| Model::from_slh_in(&base.feed_inputs(&s.inputs)?, &space))
        .collect::<Result<_>>()?;
    let mut marks = Vec::with_capacity(segments.len());
    let mut start = 0.0;
    for s in &segments {
        marks.push(SegmentMark { condition: s.condition.clone(), start, end: start + s.duration });
        start += s.duration;
    }

    let mut traces = match config.method {
        Method::Master => {
            let mut run = MasterIntegrator::new(state, &models[0], &config)?;
            for (m, s) in models.iter().zip(&segments) {
                run.run(m, s.duration)?;
            }
            vec![run.trace]
        }
        Method::Mcwf => (0..config.trajectories)
            .into_par_iter()
            .map(|k| {
                let mut traj = Trajectory::new(state, &models[0], &config, k)?;
                for (m, s) in models.iter().zip(&segments) {
                    traj.run(m, s.duration)?;
                }
                Ok(traj.trace)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    for tr in &mut traces {
        tr.segments = marks.clone();
    }
    Ok(traces)
}
