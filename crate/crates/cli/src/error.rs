use std::fmt;
use std::io;

use msep_core::{DominantError, MetricError, OracleError, ReductionError};
use msep_volume::VolumeError;

/// A malformed input, located by line when the format is line based.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatError {
    pub line: Option<usize>,
    pub message: String,
}

impl FormatError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn whole(message: impl Into<String>) -> Self {
        FormatError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Format { path: String, error: FormatError },
    Precondition(String),
    Io { path: String, error: io::Error },
}

impl CliError {
    /// 2 usage, 3 malformed input, 4 violated precondition, 1 I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Format { .. } => 3,
            CliError::Precondition(_) => 4,
            CliError::Io { .. } => 1,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn precondition(message: impl fmt::Display) -> Self {
        CliError::Precondition(message.to_string())
    }

    pub fn format(path: &str, error: FormatError) -> Self {
        CliError::Format {
            path: path.to_string(),
            error,
        }
    }

    pub fn io(path: &str, error: io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            error,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Format { path, error } => write!(f, "{path}: {error}"),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
            CliError::Io { path, error } => write!(f, "{path}: {error}"),
        }
    }
}

impl std::error::Error for CliError {}

macro_rules! precondition_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::precondition(e)
            }
        }
    )*};
}

precondition_from!(DominantError, MetricError, OracleError, ReductionError);

impl From<VolumeError> for CliError {
    fn from(e: VolumeError) -> Self {
        match e {
            VolumeError::Io(error) => CliError::Io {
                path: "<volume>".into(),
                error,
            },
            other => CliError::precondition(other),
        }
    }
}
