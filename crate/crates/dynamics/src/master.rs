//! Lindblad master equation with fixed-step RK4.

use qhdl_core::{DenseMatrix, SparseMatrix, C64};

use crate::config::{steps_in, SimulationConfig};
use crate::error::{DynamicsError, Result};
use crate::model::Model;
use crate::state::QuantumState;
use crate::trace::ExpectationTrace;

const I: C64 = C64::new(0.0, 1.0);

/// `dρ/dt = -i Heff ρ + i ρ Heff† + Σ L ρ L†`, valid for any (not
/// necessarily Hermitian) `ρ`.
pub fn liouvillian_apply(model: &Model, rho: &DenseMatrix) -> Result<DenseMatrix> {
    if rho.dim() != model.dim() {
        return Err(DynamicsError::SpaceMismatch { state: rho.dim(), model: model.dim() });
    }
    let rho_adj = rho.adjoint();
    let mut out = model.heff().mul_dense(rho).scaled(-I);
    // ρ Heff† = (Heff ρ†)†
    out.axpy(I, &model.heff().mul_dense(&rho_adj).adjoint());
    for l in model.l() {
        // L ρ L† = (L (L ρ)†)†
        let lr = l.mul_dense(rho);
        out.axpy(C64::new(1.0, 0.0), &l.mul_dense(&lr.adjoint()).adjoint());
    }
    Ok(out)
}

fn rk4_step(model: &Model, rho: &DenseMatrix, dt: f64) -> Result<DenseMatrix> {
    let h = C64::new(dt, 0.0);
    let k1 = liouvillian_apply(model, rho)?;
    let mut y = rho.clone();
    y.axpy(h * 0.5, &k1);
    let k2 = liouvillian_apply(model, &y)?;
    let mut y = rho.clone();
    y.axpy(h * 0.5, &k2);
    let k3 = liouvillian_apply(model, &y)?;
    let mut y = rho.clone();
    y.axpy(h, &k3);
    let k4 = liouvillian_apply(model, &y)?;
    let mut next = rho.clone();
    next.axpy(h / 6.0, &k1);
    next.axpy(h / 3.0, &k2);
    next.axpy(h / 3.0, &k3);
    next.axpy(h / 6.0, &k4);
    Ok(next)
}

#[derive(Clone, Debug)]
pub struct MasterRun {
    pub trace: ExpectationTrace,
    pub state: DenseMatrix,
}

/// Running master-equation integration that can switch models between
/// segments.
pub(crate) struct MasterIntegrator {
    pub rho: DenseMatrix,
    pub step: usize,
    pub dt: f64,
    pub steps_per_sample: usize,
    pub observables: Vec<SparseMatrix>,
    pub trace: ExpectationTrace,
}

impl MasterIntegrator {
    pub fn new(state: &QuantumState, model: &Model, config: &SimulationConfig) -> Result<Self> {
        let rho = match state.to_density() {
            QuantumState::DensityMatrix(_, rho) => rho,
            QuantumState::StateVector(..) => unreachable!(),
        };
        if rho.dim() != model.dim() {
            return Err(DynamicsError::SpaceMismatch { state: rho.dim(), model: model.dim() });
        }
        let mut me = Self {
            rho,
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
        let values: Vec<C64> = self.observables.iter().map(|a| self.rho.trace_with(a)).collect();
        self.trace.push(t, values);
    }

    pub fn run(&mut self, model: &Model, duration: f64) -> Result<()> {
        let steps = steps_in(duration, self.dt)?;
        for _ in 0..steps {
            self.rho = rk4_step(model, &self.rho, self.dt)?;
            self.step += 1;
            if self.step % self.steps_per_sample == 0 {
                let tr = self.rho.trace();
                let drift = (tr - 1.0).norm();
                if !drift.is_finite() || drift > 1e-4 {
                    return Err(DynamicsError::TraceDrift { t: self.step as f64 * self.dt, trace: tr.re });
                }
                self.sample();
            }
        }
        Ok(())
    }
}

/// Integrates the master equation from `state` up to `config.t_final`.
pub fn integrate_master(model: &Model, state: &QuantumState, config: &SimulationConfig) -> Result<MasterRun> {
    config.validate()?;
    let mut run = MasterIntegrator::new(state, model, config)?;
    run.run(model, config.t_final)?;
    Ok(MasterRun { trace: run.trace, state: run.rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qhdl_core::{components, Slh};

    #[test]
    fn empty_model_has_zero_derivative() {
        let model = Model::from_slh(&Slh::identity(2)).unwrap();
        let rho = DenseMatrix::identity(1);
        assert_eq!(liouvillian_apply(&model, &rho).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn derivative_is_traceless_for_non_hermitian_input() {
        let q = components::cavity(1.3, 0.7, "a", 4).unwrap();
        let model = Model::from_slh(&q).unwrap();
        let rho = DenseMatrix::from_fn(4, |r, c| C64::new((r * 3 + c) as f64 * 0.1, r as f64 - c as f64 * 0.5));
        assert!(liouvillian_apply(&model, &rho).unwrap().trace().norm() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let model = Model::from_slh(&components::cavity(0.0, 1.0, "a", 3).unwrap()).unwrap();
        assert!(matches!(
            liouvillian_apply(&model, &DenseMatrix::identity(2)),
            Err(DynamicsError::SpaceMismatch { .. })
        ));
    }
}
