use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Algebra(#[from] qhdl_core::Error),
    #[error("state dimension {state} does not match model dimension {model}")]
    SpaceMismatch { state: usize, model: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("trace drifted to {trace:.3e} at t = {t}; the step dt is too large")]
    TraceDrift { t: f64, trace: f64 },
    #[error("all jump weights vanish at t = {t} (norm underflow)")]
    ZeroJumpWeights { t: f64 },
    #[error("state is not normalizable")]
    ZeroState,
}

pub type Result<T, E = DynamicsError> = std::result::Result<T, E>;
