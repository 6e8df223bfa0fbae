//! Plain CSV files for traces, jump records and segment boundaries.
//!
//! Numbers are written with 17 significant digits.

use std::io::{self, Write};

use qhdl_core::C64;

use crate::trace::{ExpectationTrace, Jump, SegmentMark};

pub fn write_trace(trace: &ExpectationTrace, mut w: impl Write) -> io::Result<()> {
    write!(w, "t")?;
    for name in &trace.names {
        write!(w, ",{name}_re,{name}_im")?;
    }
    writeln!(w)?;
    for (i, t) in trace.times.iter().enumerate() {
        write!(w, "{t:.16e}")?;
        for series in &trace.values {
            write!(w, ",{:.16e},{:.16e}", series[i].re, series[i].im)?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_jumps(jumps: &[Jump], mut w: impl Write) -> io::Result<()> {
    writeln!(w, "trajectory,t,channel")?;
    for j in jumps {
        writeln!(w, "{},{:.16e},{}", j.trajectory, j.t, j.channel)?;
    }
    Ok(())
}

pub fn write_segments(segments: &[SegmentMark], mut w: impl Write) -> io::Result<()> {
    writeln!(w, "condition,start,end")?;
    for s in segments {
        writeln!(w, "{},{:.16e},{:.16e}", s.condition, s.start, s.end)?;
    }
    Ok(())
}

fn bad(line: usize, msg: impl std::fmt::Display) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, format!("line {line}: {msg}"))
}

fn number(field: &str, line: usize) -> io::Result<f64> {
    field.trim().parse().map_err(|_| bad(line, format!("not a number: '{field}'")))
}

/// Reads a file written by [`write_trace`].
pub fn read_trace(text: &str) -> io::Result<ExpectationTrace> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty trace file"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.first() != Some(&"t") || cols.len() % 2 != 1 {
        return Err(bad(1, "header must be t,<name>_re,<name>_im,..."));
    }
    let mut names = Vec::new();
    for pair in cols[1..].chunks(2) {
        match (pair[0].strip_suffix("_re"), pair[1].strip_suffix("_im")) {
            (Some(a), Some(b)) if a == b => names.push(a.to_string()),
            _ => return Err(bad(1, format!("mismatched columns '{}', '{}'", pair[0], pair[1]))),
        }
    }
    let mut trace = ExpectationTrace::new(names);
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != cols.len() {
            return Err(bad(i + 1, format!("expected {} fields, found {}", cols.len(), fields.len())));
        }
        let nums = fields.iter().map(|f| number(f, i + 1)).collect::<io::Result<Vec<_>>>()?;
        trace.push(nums[0], nums[1..].chunks(2).map(|p| C64::new(p[0], p[1])));
    }
    Ok(trace)
}

pub fn read_segments(text: &str) -> io::Result<Vec<SegmentMark>> {
    text.lines()
        .enumerate()
        .skip(1)
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 3 {
                return Err(bad(i + 1, "expected condition,start,end"));
            }
            Ok(SegmentMark { condition: f[0].trim().to_string(), start: number(f[1], i + 1)?, end: number(f[2], i + 1)? })
        })
        .collect()
}

pub fn read_jumps(text: &str) -> io::Result<Vec<Jump>> {
    text.lines()
        .enumerate()
        .skip(1)
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 3 {
                return Err(bad(i + 1, "expected trajectory,t,channel"));
            }
            let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(i + 1, format!("not an index: '{s}'")));
            Ok(Jump { trajectory: int(f[0])?, t: number(f[1], i + 1)?, channel: int(f[2])? })
        })
        .collect()
}
