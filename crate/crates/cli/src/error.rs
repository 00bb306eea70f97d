use std::fmt;

use altfid_core::Error;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Usage = 2,
    InvalidState = 3,
    Numerical = 4,
    Assertion = 5,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Usage,
            message: message.into(),
        }
    }

    pub fn assertion(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Assertion,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn exit_for(err: &Error) -> Exit {
    match err {
        Error::Parse(_) | Error::InvalidParameter(_) | Error::InvalidSubsystems(_) => Exit::Usage,
        Error::DimensionMismatch(..)
        | Error::NotSquare { .. }
        | Error::BadShape { .. }
        | Error::NotHermitian(_)
        | Error::InvalidTrace(_)
        | Error::NotPsd(_)
        | Error::NotNormalized(_)
        | Error::NotPure(_) => Exit::InvalidState,
        Error::NoConvergence(_)
        | Error::SingularDecayRate { .. }
        | Error::PuritySingularity { .. }
        | Error::InconsistentBound(_) => Exit::Numerical,
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        Self {
            exit: exit_for(&err),
            message: err.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
