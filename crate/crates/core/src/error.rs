use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode `{label}` declared with conflicting dimensions {first} and {second}")]
    ModeConflict { label: String, first: usize, second: usize },
    #[error("duplicate mode label `{0}`")]
    DuplicateMode(String),
    #[error("invalid dimension {dim} for mode `{label}`")]
    InvalidDimension { label: String, dim: usize },
    #[error("operator matrix is {rows}x{cols} but the space has dimension {dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },
    #[error("channel count mismatch: {left} vs {right}")]
    ChannelMismatch { left: usize, right: usize },
    #[error("feedback requires at least 2 channels, got {0}")]
    FeedbackArity(usize),
    #[error("feedback index {index} out of range for {cdim} channels")]
    ChannelIndex { index: usize, cdim: usize },
    #[error("feedback {k}->{l} is not well-posed: 1 - S[{k},{l}] is singular")]
    SingularFeedback { k: usize, l: usize },
    #[error("image tuple {0:?} is not a permutation")]
    NotBijective(Vec<usize>),
    #[error("concatenation of an empty list")]
    EmptyConcatenation,
    #[error("no binding for component instance `{0}`")]
    Unbound(String),
    #[error("binding for `{label}` has {got} channels, expression expects {expected}")]
    BindingArity { label: String, expected: usize, got: usize },
    #[error("scattering matrix is not block diagonal at split {0}")]
    NotDecomposable(usize),
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("division by zero in parameter expression")]
    DivisionByZero,
    #[error("malformed model: {0}")]
    Model(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
