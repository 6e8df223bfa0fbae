use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use qhdl_core::{HilbertSpace, ModelFile, Slh};
use qhdl_dynamics::{csv, integrate_master, mcwf_ensemble, run_input_sequence, ExpectationTrace, Method, Model, Observable, QuantumState, SimulationConfig};

use crate::args::{MethodArg, SimArgs};
use crate::commands::key_value;
use crate::error::{io_err, CliError, Result};
use crate::schedule::parse_schedule;

pub fn parse_observables(space: &HilbertSpace, specs: &[String]) -> Result<Vec<Observable>> {
    if specs.is_empty() {
        return Ok(Observable::numbers(space)?);
    }
    specs
        .iter()
        .map(|s| match s.split_once(':') {
            Some(("n", label)) => Ok(Observable::number(space, label)?),
            Some(("a", label)) => Ok(Observable::destroy(space, label)?),
            _ => Err(CliError::user(format!("observable '{s}' is not n:LABEL or a:LABEL"))),
        })
        .collect()
}

pub fn initial_state(space: &HilbertSpace, specs: &[String], method: Method) -> Result<QuantumState> {
    let occ = specs
        .iter()
        .map(|s| {
            let (k, v) = key_value(s, "initial occupation")?;
            let n = v.parse::<usize>().map_err(|_| CliError::user(format!("initial occupation of '{k}' is not an integer")))?;
            Ok((k, n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match method {
        Method::Master => QuantumState::fock_density(space, &occ)?,
        Method::Mcwf => QuantumState::fock_vector(space, &occ)?,
    })
}

pub fn load_model(path: &Path) -> Result<(ModelFile, Slh)> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let file = ModelFile::from_json(&text).map_err(|e| CliError::user(format!("{}: {e}", path.display())))?;
    let slh = file.to_triplet().map_err(|e| CliError::user(format!("{}: {e}", path.display())))?;
    Ok((file, slh))
}

/// Traces of a simulation: the mean and, for trajectories, each run.
pub struct SimOutput {
    pub mean: ExpectationTrace,
    pub runs: Vec<ExpectationTrace>,
}

/// Runs the simulation described by `args` without writing files.
pub fn simulate(args: &SimArgs) -> Result<SimOutput> {
    let (file, slh) = load_model(&args.model)?;
    let space = file.hilbert_space()?;
    let method = match args.method {
        MethodArg::Master => Method::Master,
        MethodArg::Mcwf => Method::Mcwf,
    };
    let observables = parse_observables(&space, &args.obs)?;
    let state = initial_state(&space, &args.init, method)?;
    let mut config = SimulationConfig::new(args.t_final.unwrap_or(0.0), args.dt, args.sample, observables)
        .with_method(method)
        .with_trajectories(args.traj, args.seed);

    let runs = if let Some(path) = &args.schedule {
        let ports = file.inputs.clone().unwrap_or_else(|| (1..=file.n).map(|k| format!("in{k}")).collect());
        let schedule = parse_schedule(&fs::read_to_string(path).map_err(io_err(path))?, &ports)?;
        config.t_final = schedule.iter().map(|s| s.duration).sum();
        run_input_sequence(&slh, &schedule, &state, &config)?
    } else {
        if args.t_final.is_none() {
            return Err(CliError::user("either --schedule or --t-final is required"));
        }
        let model = Model::from_slh(&slh)?;
        match method {
            Method::Master => vec![integrate_master(&model, &state, &config)?.trace],
            Method::Mcwf => mcwf_ensemble(&model, &state, &config)?,
        }
    };
    let mean = if runs.len() == 1 { runs[0].clone() } else { ExpectationTrace::mean(&runs) };
    Ok(SimOutput { mean, runs })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(io_err(path))?))
}

pub fn cmd_sim(args: &SimArgs) -> Result<String> {
    let out = simulate(args)?;
    let dir = &args.out;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let path = dir.join("trace.csv");
    csv::write_trace(&out.mean, create(&path)?).map_err(io_err(&path))?;
    if args.method == MethodArg::Mcwf {
        let path = dir.join("jumps.csv");
        csv::write_jumps(&out.mean.jumps, create(&path)?).map_err(io_err(&path))?;
    }
    if !out.mean.segments.is_empty() {
        let path = dir.join("segments.csv");
        csv::write_segments(&out.mean.segments, create(&path)?).map_err(io_err(&path))?;
    }
    if args.per_trajectory {
        for (k, tr) in out.runs.iter().enumerate() {
            let path = dir.join(format!("traj_{k:04}.csv"));
            csv::write_trace(tr, create(&path)?).map_err(io_err(&path))?;
        }
    }
    Ok(format!(
        "{} samples, {} trajectories, {} jumps written to {}\n",
        out.mean.len(),
        out.runs.len(),
        out.mean.jumps.len(),
        dir.display()
    ))
}
