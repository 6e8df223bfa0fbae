use std::fmt;

/// A failed command with its process exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn user(message: impl fmt::Display) -> Self {
        Self { code: 1, message: message.to_string() }
    }

    pub fn internal(message: impl fmt::Display) -> Self {
        Self { code: 2, message: message.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<qhdl_lang::CompileError> for CliError {
    fn from(e: qhdl_lang::CompileError) -> Self {
        match e {
            qhdl_lang::CompileError::Synth(_) => Self::internal(e),
            _ => Self::user(e),
        }
    }
}

impl From<qhdl_core::Error> for CliError {
    fn from(e: qhdl_core::Error) -> Self {
        Self::user(e)
    }
}

impl From<qhdl_dynamics::DynamicsError> for CliError {
    fn from(e: qhdl_dynamics::DynamicsError) -> Self {
        match e {
            qhdl_dynamics::DynamicsError::ZeroJumpWeights { .. } => Self::internal(e),
            _ => Self::user(e),
        }
    }
}

impl From<qhdl_reduction::ReductionError> for CliError {
    fn from(e: qhdl_reduction::ReductionError) -> Self {
        Self::user(e)
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Attaches a path to an I/O error.
pub fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::user(format!("{}: {e}", path.display()))
}
