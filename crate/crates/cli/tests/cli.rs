use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qhdl_core::{ModelFile, C64};
use qhdl_dynamics::{csv, integrate_master, ExpectationTrace, Model, Observable, QuantumState, SegmentMark, SimulationConfig};
use qhdl_lang::{FockDims, Library, Source};

fn circuits() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits")
}

fn circuit(name: &str) -> String {
    circuits().join(name).display().to_string()
}

fn qhdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhdl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const LATCH_PARAMS: [&str; 6] = ["theta=0.891", "phi=2.546", "beta=-34.289,-11.909", "delta=50", "chi=-0.8333333333333334", "kappa=25"];

fn latch_args<'a>(extra: &[&'a str]) -> Vec<String> {
    let mut v: Vec<String> = ["compile", &circuit("latch.qhdl"), &circuit("pseudo_nand.qhdl"), "--entity", "latch"].map(String::from).to_vec();
    for p in LATCH_PARAMS {
        v.push("--param".into());
        v.push(p.into());
    }
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

#[test]
fn parse_reports_success_and_diagnostics() {
    let ok = qhdl(&["parse", &circuit("mach_zehnder.qhdl")]);
    assert!(ok.status.success(), "{}", stderr(&ok));
    let bad = qhdl(&["parse", &circuit("invalid/dangling_signal.qhdl")]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stderr(&bad).lines().count(), 1);
    assert!(stderr(&bad).contains("dangling_signal.qhdl:12:12:"));
    let both = qhdl(&["parse", &circuit("latch.qhdl"), &circuit("pseudo_nand.qhdl"), "--json"]);
    assert!(both.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&both)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn synth_renders_text_and_json() {
    let text = qhdl(&["synth", &circuit("mach_zehnder.qhdl"), "--entity", "mach_zehnder"]);
    assert!(text.status.success());
    let out = stdout(&text);
    for b in ["b1", "p", "b2"] {
        assert!(out.contains(&format!(" {b} ")), "{out}");
    }
    let json = qhdl(&["synth", &circuit("pseudo_nand.qhdl"), "--entity", "pseudo_nand", "--format", "json"]);
    let e = qhdl_core::CircuitExpression::from_json(&stdout(&json)).unwrap();
    assert_eq!(e.cdim(), 4);
    let latch = qhdl(&["synth", &circuit("latch.qhdl"), &circuit("pseudo_nand.qhdl"), "--entity", "latch", "--format", "json"]);
    assert_eq!(qhdl_core::CircuitExpression::from_json(&stdout(&latch)).unwrap().cdim(), 6);
    let unknown = qhdl(&["synth", &circuit("mach_zehnder.qhdl"), "--entity", "nope"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn compile_writes_models() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("latch.json");
    let args = latch_args(&["--fock", "*=12", "--out", out.to_str().unwrap()]);
    let o = Command::new(env!("CARGO_BIN_EXE_qhdl")).args(&args).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("unitarity residual"));
    let file = ModelFile::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file.n, 6);
    assert_eq!(file.space.iter().map(|m| m.dim).collect::<Vec<_>>(), vec![12, 12]);

    let mz = dir.path().join("mz.json");
    let o = qhdl(&["compile", &circuit("mach_zehnder.qhdl"), "--entity", "mach_zehnder", "--param", "phi=0.2", "-o", mz.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(ModelFile::from_json(&fs::read_to_string(&mz).unwrap()).unwrap().space.is_empty());

    let missing = qhdl(&["compile", &circuit("pseudo_nand.qhdl"), "--entity", "pseudo_nand", "--fock", "*=4"]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(stderr(&missing).trim(), "missing parameter theta");
    let no_fock = Command::new(env!("CARGO_BIN_EXE_qhdl")).args(latch_args(&[])).output().unwrap();
    assert_eq!(no_fock.status.code(), Some(1));
    assert!(stderr(&no_fock).contains("missing Fock dimension"));
}

fn compile_cavity(dir: &Path) -> PathBuf {
    let path = dir.join("cavity.json");
    let o = qhdl(&["compile", &circuit("cavity.qhdl"), "--entity", "lossy_cavity", "--fock", "c=20", "-o", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

#[test]
fn serialized_model_simulates_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let model_path = compile_cavity(dir.path());
    let out = dir.path().join("run");
    let o = qhdl(&["sim", model_path.to_str().unwrap(), "--t-final", "5", "--dt", "1e-3", "--sample", "0.01", "--init", "c=5", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let trace = csv::read_trace(&fs::read_to_string(out.join("trace.csv")).unwrap()).unwrap();

    let src = Source::parse("cavity.qhdl", &fs::read_to_string(circuit("cavity.qhdl")).unwrap()).unwrap();
    let compiled = Library { sources: &[src] }.compile("lossy_cavity", None, &BTreeMap::new(), &FockDims::uniform(20)).unwrap();
    let model = Model::from_slh(&compiled.model).unwrap();
    let space = model.space().clone();
    let config = SimulationConfig::new(5.0, 1e-3, 0.01, Observable::numbers(&space).unwrap());
    let rho = QuantumState::fock_density(&space, &[("c", 5)]).unwrap();
    let direct = integrate_master(&model, &rho, &config).unwrap().trace;
    assert_eq!(trace.values, direct.values);
    assert_eq!(trace.times, direct.times);
    for (t, n) in trace.times.iter().zip(trace.real("n(c)").unwrap()) {
        assert!((n - 5.0 * (-t).exp()).abs() < 1e-3);
    }
}

#[test]
fn trajectories_and_schedules() {
    let dir = tempfile::tempdir().unwrap();
    let model_path = compile_cavity(dir.path());
    let sched = dir.path().join("schedule.json");
    fs::write(&sched, r#"[{"condition": "ON", "duration": 0.5, "inputs": {"input": [1.0, 0.0]}}, {"condition": "OFF", "duration": 0.5, "inputs": {}}, {"condition": "ON", "duration": 0.5}]"#).unwrap();
    let out = dir.path().join("run");
    let args = ["sim", model_path.to_str().unwrap(), "--method", "mcwf", "--schedule", sched.to_str().unwrap(), "--traj", "3", "--seed", "4", "--dt", "1e-3", "--sample", "0.05", "--per-trajectory", "-o", out.to_str().unwrap()];
    let o = qhdl(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["trace.csv", "jumps.csv", "segments.csv", "traj_0000.csv", "traj_0002.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let segs = csv::read_segments(&fs::read_to_string(out.join("segments.csv")).unwrap()).unwrap();
    assert_eq!(segs.len(), 3);
    let first = fs::read(out.join("jumps.csv")).unwrap();
    assert!(qhdl(&args).status.success());
    assert_eq!(fs::read(out.join("jumps.csv")).unwrap(), first);

    fs::write(&sched, r#"[{"condition": "ON", "duration": 0.5, "inputs": {"input": [1.0, 0.0]}}, {"condition": "SET", "duration": 0.5}]"#).unwrap();
    let bad = qhdl(&args);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("unknown condition 'SET'; known conditions: ON"), "{}", stderr(&bad));
}

fn synthetic_trace(states: &[usize], levels: &[f64], dt: f64) -> ExpectationTrace {
    let mut tr = ExpectationTrace::new(vec!["n(a)".into(), "n(b)".into()]);
    for (i, &s) in states.iter().enumerate() {
        tr.push(i as f64 * dt, [C64::new(levels[s], 0.0), C64::new(0.0, 0.0)]);
    }
    tr.segments = vec![SegmentMark { condition: "HOLD".into(), start: 0.0, end: (states.len() - 1) as f64 * dt }];
    tr
}

#[test]
fn reduce_recovers_two_state_rates() {
    use rand::{Rng, SeedableRng};
    let dir = tempfile::tempdir().unwrap();
    let traces = dir.path().join("traces");
    fs::create_dir(&traces).unwrap();
    let (dt, g01, g10): (f64, f64, f64) = (0.01, 0.5, 1.5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    for k in 0..4 {
        let mut s = 0;
        let states: Vec<usize> = (0..100_000)
            .map(|_| {
                let out = s;
                let rate = if s == 0 { g01 } else { g10 };
                if rng.gen::<f64>() < 1.0 - (-rate * dt).exp() {
                    s = 1 - s;
                }
                out
            })
            .collect();
        let tr = synthetic_trace(&states, &[4.0, -4.0], dt);
        csv::write_trace(&tr, fs::File::create(traces.join(format!("traj_{k:04}.csv"))).unwrap()).unwrap();
    }
    let out = dir.path().join("reduced.json");
    let counts = dir.path().join("counts.csv");
    let o = qhdl(&["reduce", traces.to_str().unwrap(), "--bin-width", "1", "--alpha", "2", "--counts", counts.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let file = ModelFile::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    let meta = file.metadata.as_ref().unwrap();
    assert_eq!(meta["M"], 6);
    assert!((meta["delta_t"].as_f64().unwrap() - dt).abs() < 1e-15);
    assert_eq!(meta["conditions"][0], "HOLD");
    // 4 drive channels and two jump channels; the first visited state is the high-D one
    assert_eq!(file.n, 6);
    let q = file.to_triplet::<f64>().unwrap();
    let rate = |ch: usize, i: usize, j: usize| q.l()[ch].matrix().get(j, i).norm_sqr();
    let bins: Vec<i64> = serde_json::from_value(meta["bins"].clone()).unwrap();
    let s_hi = bins.iter().position(|&b| b == 4).unwrap();
    let s_lo = bins.iter().position(|&b| b == -4).unwrap();
    let r01 = rate(4, s_hi, s_lo).max(rate(5, s_hi, s_lo));
    let r10 = rate(4, s_lo, s_hi).max(rate(5, s_lo, s_hi));
    assert!((r01 - g01).abs() < 0.1 * g01, "{r01}");
    assert!((r10 - g10).abs() < 0.1 * g10, "{r10}");
    assert!(fs::read_to_string(&counts).unwrap().starts_with("condition,i,j,count\n"));

    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let o = qhdl(&["reduce", empty.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no trace files"));
}
