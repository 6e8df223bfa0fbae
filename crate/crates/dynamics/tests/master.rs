use qhdl_core::{components, DenseMatrix, HilbertSpace, Operator, Slh, C64};
use qhdl_dynamics::{integrate_master, liouvillian_apply, DynamicsError, Model, Observable, QuantumState, SimulationConfig};

fn decaying_cavity(n: usize, kappa: f64) -> Slh {
    components::cavity(0.0, kappa, "a", n).unwrap()
}

fn with_trace(space: &HilbertSpace, mut obs: Vec<Observable>) -> Vec<Observable> {
    obs.push(Observable::new("one", Operator::identity(space)));
    obs
}

#[test]
fn single_photon_loss_derivative_by_hand() {
    let kappa = 2.0;
    let model = Model::from_slh(&decaying_cavity(2, kappa)).unwrap();
    let mut rho = DenseMatrix::zeros(2);
    rho[(1, 1)] = C64::new(1.0, 0.0);
    let d = liouvillian_apply(&model, &rho).unwrap();
    let mut expected = DenseMatrix::zeros(2);
    expected[(0, 0)] = C64::new(kappa, 0.0);
    expected[(1, 1)] = C64::new(-kappa, 0.0);
    assert!(d.max_abs_diff(&expected) < 1e-15);
}

#[test]
fn photon_number_decays_exponentially() {
    let q = decaying_cavity(20, 1.0);
    let model = Model::from_slh(&q).unwrap();
    let space = model.space().clone();
    let obs = with_trace(&space, Observable::numbers(&space).unwrap());
    let config = SimulationConfig::new(5.0, 1e-3, 0.01, obs);
    let rho0 = QuantumState::fock_density(&space, &[("a", 5)]).unwrap();
    let run = integrate_master(&model, &rho0, &config).unwrap();
    let n = run.trace.real("n(a)").unwrap();
    let one = run.trace.series("one").unwrap();
    assert_eq!(run.trace.len(), 501);
    for (i, &t) in run.trace.times.iter().enumerate() {
        assert!((n[i] - 5.0 * (-t).exp()).abs() < 1e-3, "t = {t}: {} vs {}", n[i], 5.0 * (-t).exp());
        assert!((one[i] - 1.0).norm() < 1e-6);
    }
    assert!(run.state.hermiticity_residual() < 1e-8);
    QuantumState::DensityMatrix(space, run.state).check().unwrap();
}

#[test]
fn photon_number_is_conserved_without_loss() {
    let space = HilbertSpace::single("a", 8).unwrap();
    let h = Operator::number("a", 8).unwrap().scale(C64::new(1.7, 0.0));
    let q = Slh::new(vec![], vec![], h).unwrap();
    let model = Model::from_slh(&q).unwrap();
    let psi: Vec<C64> = (0..8).map(|k| C64::new(1.0 / (k as f64 + 1.0), 0.3 * k as f64)).collect();
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<C64> = psi.iter().map(|z| z / norm).collect();
    let rho0 = QuantumState::StateVector(space.clone(), psi);
    let config = SimulationConfig::new(3.0, 1e-3, 0.1, Observable::numbers(&space).unwrap());
    let run = integrate_master(&model, &rho0, &config).unwrap();
    let n = run.trace.real("n(a)").unwrap();
    assert!(n.iter().all(|x| (x - n[0]).abs() < 1e-9));
}

#[test]
fn driven_cavity_amplitude_follows_linear_ode() {
    let (delta, kappa, alpha) = (0.8, 1.5, C64::new(0.6, -0.3));
    let cavity = components::cavity(delta, kappa, "a", 20).unwrap();
    let q = cavity.series(&components::displace(alpha)).unwrap();
    let model = Model::from_slh(&q).unwrap();
    let space = model.space().clone();
    let config = SimulationConfig::new(4.0, 1e-3, 0.01, vec![Observable::destroy(&space, "a").unwrap()]);
    let rho0 = QuantumState::fock_density(&space, &[]).unwrap();
    let run = integrate_master(&model, &rho0, &config).unwrap();
    let a = run.trace.series("a(a)").unwrap();

    let f = |x: C64| -(C64::new(kappa / 2.0, delta)) * x - kappa.sqrt() * alpha;
    let (dt, mut x) = (1e-3, C64::new(0.0, 0.0));
    for (i, &t) in run.trace.times.iter().enumerate() {
        if i > 0 {
            for _ in 0..10 {
                let k1 = f(x);
                let k2 = f(x + k1 * (dt / 2.0));
                let k3 = f(x + k2 * (dt / 2.0));
                let k4 = f(x + k3 * dt);
                x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
            }
        }
        assert!((a[i] - x).norm() < 1e-8, "t = {t}: {} vs {x}", a[i]);
    }
}

#[test]
fn oversized_step_trips_the_drift_guard() {
    let model = Model::from_slh(&decaying_cavity(20, 1.0)).unwrap();
    let space = model.space().clone();
    let config = SimulationConfig::new(40.0, 1.0, 1.0, vec![]);
    let rho0 = QuantumState::fock_density(&space, &[("a", 19)]).unwrap();
    let err = integrate_master(&model, &rho0, &config).unwrap_err();
    assert!(matches!(err, DynamicsError::TraceDrift { .. }), "{err}");
}

#[test]
fn scattering_matrix_does_not_enter_the_dynamics() {
    let a = components::kerr_cavity(
        &components::KerrCavity { detuning: 1.0, chi: -0.3, kappa_1: 0.8, kappa_2: 0.4 },
        "a",
        6,
    )
    .unwrap();
    let b = components::cavity(0.5, 1.0, "b", 5).unwrap();
    let q = components::beamsplitter(0.4).series(&components::displace(C64::new(0.7, 0.1)).concatenate(&components::displace(C64::new(0.0, 0.0))).unwrap()).unwrap();
    let full = a.concatenate(&b).unwrap().concatenate(&q).unwrap().embedded().unwrap();
    let trivial_s = Slh::new(Slh::identity(full.cdim()).s().to_vec(), full.l().to_vec(), full.h().clone()).unwrap();
    let m1 = Model::from_slh(&full).unwrap();
    let m2 = Model::from_slh(&trivial_s).unwrap();
    let space = m1.space().clone();
    let config = SimulationConfig::new(1.0, 1e-3, 0.05, Observable::numbers(&space).unwrap());
    let rho0 = QuantumState::fock_density(&space, &[("a", 2), ("b", 1)]).unwrap();
    let r1 = integrate_master(&m1, &rho0, &config).unwrap();
    let r2 = integrate_master(&m2, &rho0, &config).unwrap();
    assert_eq!(r1.trace, r2.trace);
}

#[test]
fn invalid_configurations_are_rejected() {
    let model = Model::from_slh(&decaying_cavity(3, 1.0)).unwrap();
    let rho0 = QuantumState::fock_density(model.space(), &[]).unwrap();
    for (t, dt, s) in [(1.0, 0.0, 0.1), (1.0, 0.2, 0.1), (0.05, 0.01, 0.1), (1.0, 0.03, 0.1)] {
        let config = SimulationConfig::new(t, dt, s, vec![]);
        assert!(matches!(integrate_master(&model, &rho0, &config), Err(DynamicsError::Config(_))), "{t} {dt} {s}");
    }
}
