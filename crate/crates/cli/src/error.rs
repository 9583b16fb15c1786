use std::fmt;
use std::process::ExitCode;

/// Failure classes with stable exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Configuration or argument validation, exit 2.
    Config(String),
    /// Trace ingestion, exit 3.
    Ingest(String),
    /// Loop analysis or simulation, exit 4.
    Loop(String),
    /// Actuator saturation under `--strict`, exit 5.
    Saturation(String),
    /// Anything else, such as an unwritable output file, exit 1.
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Other(_) => 1,
            CliError::Config(_) => 2,
            CliError::Ingest(_) => 3,
            CliError::Loop(_) => 4,
            CliError::Saturation(_) => 5,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Ingest(m) => write!(f, "ingest error: {m}"),
            CliError::Loop(m) => write!(f, "loop error: {m}"),
            CliError::Saturation(m) => write!(f, "saturation: {m}"),
            CliError::Other(m) => write!(f, "error: {m}"),
        }
    }
}

pub fn config(path: &str, err: impl fmt::Display) -> CliError {
    CliError::Config(format!("{path}: {err}"))
}

pub fn io(path: &std::path::Path, err: impl fmt::Display) -> CliError {
    CliError::Other(format!("{}: {err}", path.display()))
}
