use serde::{Deserialize, Serialize};

use crate::error::{DynamicsError, Result};
use crate::model::Observable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Master,
    Mcwf,
}

#[derive(Clone, Debug)]
pub struct SimulationConfig {
    pub t_final: f64,
    pub dt: f64,
    /// Interval between recorded samples; a whole multiple of `dt`.
    pub sample_dt: f64,
    pub method: Method,
    pub trajectories: usize,
    pub seed: u64,
    pub observables: Vec<Observable>,
}

impl SimulationConfig {
    pub fn new(t_final: f64, dt: f64, sample_dt: f64, observables: Vec<Observable>) -> Self {
        Self { t_final, dt, sample_dt, method: Method::Master, trajectories: 1, seed: 0, observables }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_trajectories(mut self, n: usize, seed: u64) -> Self {
        self.trajectories = n;
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.dt > 0.0 && self.dt <= self.sample_dt * (1.0 + 1e-12) && self.sample_dt <= self.t_final * (1.0 + 1e-12);
        if !ok {
            return Err(DynamicsError::Config(format!(
                "need 0 < dt <= sample interval <= t_final, got dt = {}, sample = {}, t_final = {}",
                self.dt, self.sample_dt, self.t_final
            )));
        }
        self.steps_per_sample()?;
        steps_in(self.t_final, self.dt)?;
        if self.method == Method::Mcwf && self.trajectories == 0 {
            return Err(DynamicsError::Config("at least one trajectory is required".into()));
        }
        Ok(())
    }

    pub fn steps_per_sample(&self) -> Result<usize> {
        steps_in(self.sample_dt, self.dt)
    }
}

/// Number of `dt` steps in `duration`, which must be a whole multiple.
pub fn steps_in(duration: f64, dt: f64) -> Result<usize> {
    let k = (duration / dt).round();
    if k < 0.0 || (k * dt - duration).abs() > 1e-9 * duration.abs().max(dt) {
        return Err(DynamicsError::Config(format!("duration {duration} is not a whole multiple of dt = {dt}")));
    }
    Ok(k as usize)
}
