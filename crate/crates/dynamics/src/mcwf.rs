//! Monte-Carlo wavefunction (quantum jump) trajectories.

use qhdl_core::{SparseMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{steps_in, SimulationConfig};
use crate::error::{DynamicsError, Result};
use crate::model::Model;
use crate::state::{expect_vector, norm_sqr, QuantumState};
use crate::trace::{ExpectationTrace, Jump};

const MINUS_I: C64 = C64::new(0.0, -1.0);

/// Random stream `k` of the generator seeded with `seed`.
pub fn trajectory_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

/// One RK4 step of `dψ/dt = -i Heff ψ`.
fn rk4(heff: &SparseMatrix, psi: &[C64], h: f64) -> Vec<C64> {
    let f = |x: &[C64]| -> Vec<C64> { heff.matvec(x).into_iter().map(|z| z * MINUS_I).collect() };
    let shift = |x: &[C64], k: &[C64], s: f64| -> Vec<C64> { x.iter().zip(k).map(|(a, b)| a + b * s).collect() };
    let k1 = f(psi);
    let k2 = f(&shift(psi, &k1, h / 2.0));
    let k3 = f(&shift(psi, &k2, h / 2.0));
    let k4 = f(&shift(psi, &k3, h));
    (0..psi.len()).map(|i| psi[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0)).collect()
}

pub(crate) struct Trajectory {
    pub index: usize,
    pub psi: Vec<C64>,
    threshold: f64,
    rng: ChaCha8Rng,
    pub step: usize,
    pub dt: f64,
    steps_per_sample: usize,
    observables: Vec<SparseMatrix>,
    pub trace: ExpectationTrace,
}

impl Trajectory {
    pub fn new(state: &QuantumState, model: &Model, config: &SimulationConfig, index: usize) -> Result<Self> {
        let QuantumState::StateVector(_, psi) = state else {
            return Err(DynamicsError::Config("quantum jump trajectories need a state vector".into()));
        };
        if psi.len() != model.dim() {
            return Err(DynamicsError::SpaceMismatch { state: psi.len(), model: model.dim() });
        }
        let n = norm_sqr(psi).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(DynamicsError::ZeroState);
        }
        let mut rng = trajectory_rng(config.seed, index);
        let threshold = rng.gen::<f64>();
        let mut me = Self {
            index,
            psi: psi.iter().map(|z| z / n).collect(),
            threshold,
            rng,
            step: 0,
            dt: config.dt,
            steps_per_sample: config.steps_per_sample()?,
            observables: model.observable_matrices(&config.observables)?,
            trace: ExpectationTrace::new(config.observables.iter().map(|o| o.name.clone()).collect()),
        };
        me.sample();
        Ok(me)
    }

    fn sample(&mut self) {
        let t = self.step as f64 * self.dt;
        let ns = norm_sqr(&self.psi);
        let values: Vec<C64> = self.observables.iter().map(|a| expect_vector(a, &self.psi, ns)).collect();
        self.trace.push(t, values);
    }

    fn jump(&mut self, model: &Model, t: f64) -> Result<()> {
        let candidates: Vec<Vec<C64>> = model.l().iter().map(|l| l.matvec(&self.psi)).collect();
        let weights: Vec<f64> = candidates.iter().map(|v| norm_sqr(v)).collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 || !total.is_finite() {
            return Err(DynamicsError::ZeroJumpWeights { t });
        }
        let mut r = self.rng.gen::<f64>() * total;
        let mut channel = weights.len() - 1;
        for (j, &w) in weights.iter().enumerate() {
            if r < w {
                channel = j;
                break;
            }
            r -= w;
        }
        while weights[channel] == 0.0 {
            channel -= 1;
        }
        let n = weights[channel].sqrt();
        self.psi = candidates[channel].iter().map(|z| z / n).collect();
        self.threshold = self.rng.gen::<f64>();
        self.trace.jumps.push(Jump { trajectory: self.index, t, channel });
        Ok(())
    }

    /// Advances one step of size `dt`, resolving any jumps inside it.
    fn advance(&mut self, model: &Model) -> Result<()> {
        let t0 = self.step as f64 * self.dt;
        if model.channels() == 0 {
            self.psi = rk4(model.heff(), &self.psi, self.dt);
            return Ok(());
        }
        let mut elapsed = 0.0;
        let resolution = self.dt / 100.0;
        loop {
            let remaining = self.dt - elapsed;
            let trial = rk4(model.heff(), &self.psi, remaining);
            if norm_sqr(&trial) >= self.threshold {
                self.psi = trial;
                return Ok(());
            }
            // the norm crosses the threshold inside (0, remaining]
            let (mut lo, mut hi) = (0.0, remaining);
            let mut at_hi = trial;
            while hi - lo > resolution {
                let mid = 0.5 * (lo + hi);
                let psi_mid = rk4(model.heff(), &self.psi, mid);
                if norm_sqr(&psi_mid) >= self.threshold {
                    lo = mid;
                } else {
                    hi = mid;
                    at_hi = psi_mid;
                }
            }
            self.psi = at_hi;
            elapsed += hi;
            self.jump(model, t0 + elapsed)?;
            if self.dt - elapsed <= 1e-12 * self.dt {
                return Ok(());
            }
        }
    }

    pub fn run(&mut self, model: &Model, duration: f64) -> Result<()> {
        let steps = steps_in(duration, self.dt)?;
        for _ in 0..steps {
            self.advance(model)?;
            self.step += 1;
            if self.step % self.steps_per_sample == 0 {
                self.sample();
            }
        }
        Ok(())
    }
}

/// One trajectory using random stream `index` of `config.seed`.
pub fn mcwf_trajectory(model: &Model, state: &QuantumState, config: &SimulationConfig, index: usize) -> Result<ExpectationTrace> {
    config.validate()?;
    let mut traj = Trajectory::new(state, model, config, index)?;
    traj.run(model, config.t_final)?;
    Ok(traj.trace)
}

/// `config.trajectories` independent trajectories, run in parallel.
pub fn mcwf_ensemble(model: &Model, state: &QuantumState, config: &SimulationConfig) -> Result<Vec<ExpectationTrace>> {
    config.validate()?;
    (0..config.trajectories.max(1)).into_par_iter().map(|k| mcwf_trajectory(model, state, config, k)).collect()
}
