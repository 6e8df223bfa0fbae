use qhdl_core::{components, HilbertSpace, Operator, Slh, C64};
use qhdl_dynamics::{integrate_master, mcwf_ensemble, mcwf_trajectory, ExpectationTrace, Method, Model, Observable, QuantumState, SimulationConfig};

fn decay_model(n: usize) -> Model {
    Model::from_slh(&components::cavity(0.0, 1.0, "a", n).unwrap()).unwrap()
}

/// Largest gap between the empirical CDF of `samples` and `cdf`.
fn ks_statistic(mut samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn closed_system_never_jumps() {
    let space = HilbertSpace::single("a", 5).unwrap();
    let h = Operator::number("a", 5).unwrap();
    let model = Model::from_slh(&Slh::new(vec![], vec![], h).unwrap()).unwrap();
    let psi = QuantumState::fock_vector(&space, &[("a", 3)]).unwrap();
    let config = SimulationConfig::new(2.0, 1e-2, 0.1, Observable::numbers(&space).unwrap()).with_method(Method::Mcwf);
    let tr = mcwf_trajectory(&model, &psi, &config, 0).unwrap();
    assert!(tr.jumps.is_empty());
    assert!(tr.real("n(a)").unwrap().iter().all(|&n| (n - 3.0).abs() < 1e-12));
}

#[test]
fn single_photon_jump_times_are_exponential() {
    let model = decay_model(2);
    let psi = QuantumState::fock_vector(model.space(), &[("a", 1)]).unwrap();
    let config = SimulationConfig::new(25.0, 1e-2, 1.0, vec![]).with_method(Method::Mcwf).with_trajectories(2000, 11);
    let runs = mcwf_ensemble(&model, &psi, &config).unwrap();
    assert!(runs.iter().all(|tr| tr.jumps.len() == 1));
    let times: Vec<f64> = runs.iter().map(|tr| tr.jumps[0].t).collect();
    let d = ks_statistic(times, |t| 1.0 - (-t).exp());
    assert!(d < 0.05, "KS statistic {d}");
}

#[test]
fn trajectory_average_matches_master_equation() {
    let model = decay_model(20);
    let space = model.space().clone();
    let obs = Observable::numbers(&space).unwrap();
    let config = SimulationConfig::new(2.0, 1e-3, 0.5, obs).with_method(Method::Mcwf).with_trajectories(500, 3);
    let psi = QuantumState::fock_vector(&space, &[("a", 5)]).unwrap();
    let runs = mcwf_ensemble(&model, &psi, &config).unwrap();
    let mean = ExpectationTrace::mean(&runs).real("n(a)").unwrap();
    let se = ExpectationTrace::standard_error(&runs, "n(a)").unwrap();
    let master = integrate_master(&model, &psi, &config.clone().with_method(Method::Master)).unwrap();
    let exact = master.trace.real("n(a)").unwrap();
    for (i, &t) in master.trace.times.iter().enumerate().skip(1) {
        let analytic = 5.0 * (-t).exp();
        assert!((mean[i] - exact[i]).abs() < 3.0 * se[i], "t = {t}: {} vs {} (se {})", mean[i], exact[i], se[i]);
        assert!((mean[i] - analytic).abs() < 0.05 * analytic, "t = {t}");
    }
}

#[test]
fn jumps_from_fock_states_lower_the_photon_number_by_one() {
    let model = decay_model(6);
    let space = model.space().clone();
    let config = SimulationConfig::new(10.0, 1e-2, 1e-2, Observable::numbers(&space).unwrap()).with_method(Method::Mcwf);
    let psi = QuantumState::fock_vector(&space, &[("a", 5)]).unwrap();
    let tr = mcwf_trajectory(&model, &psi, &config, 4).unwrap();
    assert!(tr.jumps.windows(2).all(|w| w[0].t < w[1].t));
    let n = tr.real("n(a)").unwrap();
    let last = *n.last().unwrap();
    assert!((last - (5 - tr.jumps.len()) as f64).abs() < 1e-9);
}

#[test]
fn seeds_determine_jump_records() {
    let q = components::kerr_cavity(
        &components::KerrCavity { detuning: 0.3, chi: -0.2, kappa_1: 1.0, kappa_2: 0.5 },
        "a",
        8,
    )
    .unwrap()
    .series(&components::displace(C64::new(1.2, 0.0)).concatenate(&components::displace(C64::new(0.0, 0.4))).unwrap())
    .unwrap();
    let model = Model::from_slh(&q).unwrap();
    let psi = QuantumState::fock_vector(model.space(), &[]).unwrap();
    let config = SimulationConfig::new(3.0, 1e-2, 0.1, vec![]).with_method(Method::Mcwf).with_trajectories(8, 42);
    let a = mcwf_ensemble(&model, &psi, &config).unwrap();
    let b = mcwf_ensemble(&model, &psi, &config).unwrap();
    let jumps = |runs: &[ExpectationTrace]| ExpectationTrace::mean(runs).jumps;
    assert_eq!(jumps(&a), jumps(&b));
    assert!(!jumps(&a).is_empty());
    let c = mcwf_ensemble(&model, &psi, &SimulationConfig { seed: 43, ..config.clone() }).unwrap();
    assert_ne!(jumps(&a), jumps(&c));
    // stream k is independent of how many other trajectories run
    let single = mcwf_trajectory(&model, &psi, &config, 5).unwrap();
    assert_eq!(single.jumps, a[5].jumps);
}
