use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("no samples to coarse-grain")]
    Empty,
    #[error("trace has no observable '{0}'")]
    MissingObservable(String),
    #[error("trace sample {index} has no condition label")]
    Unlabelled { index: usize },
    #[error("invalid bin width {0}")]
    BinWidth(f64),
    #[error("drive construction needs M = 4k + 2 with k >= 1, got {0}")]
    StateCount(usize),
    #[error("state index {state} out of range for {m} states")]
    StateIndex { state: usize, m: usize },
    #[error("expected {expected} per-state output parameters, got {got}")]
    OutputParameters { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] qhdl_core::Error),
}

pub type Result<T, E = ReductionError> = std::result::Result<T, E>;
