use std::fs;
use std::path::{Path, PathBuf};

use qhdl_core::C64;
use qhdl_dynamics::{csv, ExpectationTrace, SegmentMark};
use qhdl_lang::parse_value;
use qhdl_reduction::{coarse_grain, estimate_markov, suggest_alpha, to_rate_matrix, write_counts, BinningSpec, ReducedModel};

use crate::args::ReduceArgs;
use crate::error::{io_err, CliError, Result};

/// Default number of bins across the observed range of D.
const DEFAULT_BINS: f64 = 37.0;

/// Per-trajectory traces of a `qhdl sim` directory, or its mean trace when
/// none were written, labelled with the recorded segments.
pub fn load_traces(dir: &Path, default_condition: &str) -> Result<Vec<ExpectationTrace>> {
    let entries = fs::read_dir(dir).map_err(io_err(dir))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("traj_") && n.ends_with(".csv")))
        .collect();
    files.sort();
    if files.is_empty() && dir.join("trace.csv").exists() {
        files.push(dir.join("trace.csv"));
    }
    if files.is_empty() {
        return Err(CliError::user(format!("{}: no trace files", dir.display())));
    }
    let seg_path = dir.join("segments.csv");
    let segments = if seg_path.exists() {
        Some(csv::read_segments(&fs::read_to_string(&seg_path).map_err(io_err(&seg_path))?).map_err(io_err(&seg_path))?)
    } else {
        None
    };
    files
        .iter()
        .map(|p| {
            let mut tr = csv::read_trace(&fs::read_to_string(p).map_err(io_err(p))?).map_err(io_err(p))?;
            tr.segments = match &segments {
                Some(s) => s.clone(),
                None => vec![SegmentMark {
                    condition: default_condition.to_string(),
                    start: tr.times.first().copied().unwrap_or(0.0),
                    end: tr.times.last().copied().unwrap_or(0.0),
                }],
            };
            Ok(tr)
        })
        .collect()
}

pub fn cmd_reduce(args: &ReduceArgs) -> Result<String> {
    let traces = load_traces(&args.traces, &args.hold)?;
    let numbers: Vec<&String> = traces[0].names.iter().filter(|n| n.starts_with("n(")).collect();
    let pick = |given: &Option<String>, k: usize| -> Result<String> {
        given
            .clone()
            .or_else(|| numbers.get(k).map(|s| s.to_string()))
            .ok_or_else(|| CliError::user("traces need two photon-number observables, or --plus and --minus"))
    };
    let (plus, minus) = (pick(&args.plus, 0)?, pick(&args.minus, 1)?);

    let dt = match args.dt {
        Some(dt) => dt,
        None => match traces[0].times.as_slice() {
            [a, b, ..] => b - a,
            _ => return Err(CliError::user("traces need at least two samples to infer the sampling interval")),
        },
    };
    let (width, origin) = match (args.bin_width, args.bin_origin) {
        (Some(w), o) => (w, o.unwrap_or(0.0)),
        (None, o) => {
            let (lo, hi) = d_range(&traces, &plus, &minus)?;
            let w = if hi > lo { (hi - lo) / DEFAULT_BINS } else { 1.0 };
            (w, o.unwrap_or(lo))
        }
    };
    let spec = BinningSpec::new(plus, minus, width, origin)?;
    let mut cg = coarse_grain(&traces, &spec)?;
    let visited = cg.spec.states();
    cg.pad_to_drive_size();
    let m = cg.spec.states();
    let est = estimate_markov(&cg.sequences, m, dt)?;
    let rates = to_rate_matrix(&est);
    let hold = rates.get(&args.hold).ok_or_else(|| {
        CliError::user(format!("no samples under the hold condition '{}'; found {}", args.hold, est.conditions.keys().cloned().collect::<Vec<_>>().join(", ")))
    })?;
    let alpha = match &args.alpha {
        Some(text) => parse_value(text).ok_or_else(|| CliError::user(format!("cannot read alpha '{text}'")))?,
        None => C64::new(suggest_alpha(hold, rates.get(&args.set), rates.get(&args.reset))?, 0.0),
    };
    let reduced = ReducedModel::build(hold, alpha, None)?;
    let file = reduced.to_model_file(&est, &cg.spec)?;
    fs::write(&args.out, file.to_json() + "\n").map_err(io_err(&args.out))?;
    if let Some(path) = &args.counts {
        let f = fs::File::create(path).map_err(io_err(path))?;
        write_counts(&est, std::io::BufWriter::new(f)).map_err(io_err(path))?;
    }
    Ok(format!(
        "{} visited bins, M = {m}, {} jump channels, alpha = {alpha}, written to {}\n",
        visited,
        reduced.jump.cdim(),
        args.out.display()
    ))
}

fn d_range(traces: &[ExpectationTrace], plus: &str, minus: &str) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for tr in traces {
        let p = tr.real(plus).ok_or_else(|| CliError::user(format!("trace has no observable '{plus}'")))?;
        let q = tr.real(minus).ok_or_else(|| CliError::user(format!("trace has no observable '{minus}'")))?;
        for (a, b) in p.iter().zip(&q) {
            lo = lo.min(a - b);
            hi = hi.max(a - b);
        }
    }
    if lo > hi {
        return Err(CliError::user("traces contain no samples"));
    }
    Ok((lo, hi))
}
