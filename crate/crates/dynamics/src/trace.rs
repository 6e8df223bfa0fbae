use qhdl_core::C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub trajectory: usize,
    pub t: f64,
    /// 0-based index into the coupling vector.
    pub channel: usize,
}

/// A schedule segment as it appears in a trace: `start < t <= end`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentMark {
    pub condition: String,
    pub start: f64,
    pub end: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExpectationTrace {
    pub names: Vec<String>,
    pub times: Vec<f64>,
    /// `values[k][i]` is observable `k` at `times[i]`.
    pub values: Vec<Vec<C64>>,
    pub jumps: Vec<Jump>,
    pub segments: Vec<SegmentMark>,
}

impl ExpectationTrace {
    pub fn new(names: Vec<String>) -> Self {
        let values = vec![Vec::new(); names.len()];
        Self { names, values, ..Self::default() }
    }

    pub fn push(&mut self, t: f64, sample: impl IntoIterator<Item = C64>) {
        self.times.push(t);
        for (series, v) in self.values.iter_mut().zip(sample) {
            series.push(v);
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn series(&self, name: &str) -> Option<&[C64]> {
        let k = self.names.iter().position(|n| n == name)?;
        Some(&self.values[k])
    }

    pub fn real(&self, name: &str) -> Option<Vec<f64>> {
        self.series(name).map(|s| s.iter().map(|z| z.re).collect())
    }

    /// Sample index closest to time `t`.
    pub fn index_at(&self, t: f64) -> Option<usize> {
        (0..self.times.len()).min_by(|&a, &b| (self.times[a] - t).abs().total_cmp(&(self.times[b] - t).abs()))
    }

    /// Condition active when each sample was produced. The initial sample
    /// belongs to the first segment.
    pub fn sample_conditions(&self) -> Vec<Option<&str>> {
        let spacing = if self.times.len() > 1 { self.times[1] - self.times[0] } else { 1.0 };
        let eps = 1e-6 * spacing;
        self.times
            .iter()
            .map(|&t| {
                self.segments
                    .iter()
                    .find(|s| t > s.start + eps && t <= s.end + eps)
                    .or_else(|| self.segments.first().filter(|s| t <= s.start + eps))
                    .map(|s| s.condition.as_str())
            })
            .collect()
    }

    /// Pointwise mean of traces on a common grid; jump records are merged.
    pub fn mean(traces: &[ExpectationTrace]) -> ExpectationTrace {
        let Some(first) = traces.first() else { return ExpectationTrace::default() };
        let mut out = ExpectationTrace::new(first.names.clone());
        out.times = first.times.clone();
        out.segments = first.segments.clone();
        let scale = 1.0 / traces.len() as f64;
        for (k, series) in out.values.iter_mut().enumerate() {
            *series = (0..first.times.len())
                .map(|i| traces.iter().map(|tr| tr.values[k][i]).sum::<C64>() * scale)
                .collect();
        }
        out.jumps = traces.iter().flat_map(|tr| tr.jumps.iter().copied()).collect();
        out
    }

    /// Standard error of the mean of the real part, per sample.
    pub fn standard_error(traces: &[ExpectationTrace], name: &str) -> Option<Vec<f64>> {
        let series: Vec<Vec<f64>> = traces.iter().map(|tr| tr.real(name)).collect::<Option<_>>()?;
        let n = series.len() as f64;
        let len = series.first()?.len();
        Some(
            (0..len)
                .map(|i| {
                    let mean = series.iter().map(|s| s[i]).sum::<f64>() / n;
                    let var = series.iter().map(|s| (s[i] - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
                    (var / n).sqrt()
                })
                .collect(),
        )
    }
}
