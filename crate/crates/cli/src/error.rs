use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use eno_core::EnoError;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; `line` is 1-based.
    Malformed { path: String, line: u64, message: String },
    Io(String),
    Eno(EnoError),
    /// The run finished but found failed checks.
    Violations(String),
}

impl CliError {
    pub fn malformed(path: &Path, line: u64, message: impl Into<String>) -> Self {
        CliError::Malformed {
            path: path.display().to_string(),
            line,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: impl fmt::Display) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }

    pub fn from_csv(path: &Path, err: csv::Error) -> Self {
        let line = err.position().map_or(0, |p| p.line());
        match err.kind() {
            csv::ErrorKind::Io(_) => CliError::io(path, err),
            _ => CliError::malformed(path, line, err.to_string()),
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Malformed { .. } => 2,
            CliError::Eno(EnoError::StencilOutOfRange(_)) => 3,
            CliError::Violations(_) => 4,
            CliError::Io(_) | CliError::Eno(_) => 1,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed { path, line, message } => write!(f, "{path}:{line}: {message}"),
            CliError::Io(m) => f.write_str(m),
            CliError::Eno(e) => write!(f, "{e}"),
            CliError::Violations(m) => f.write_str(m),
        }
    }
}

impl From<EnoError> for CliError {
    fn from(e: EnoError) -> Self {
        CliError::Eno(e)
    }
}
