use std::fmt;

use serde_json::json;

/// A failure that ends the process, with the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Core(cpshift_core::Error),
    Io(String),
    /// The validation report was written but some check failed.
    ValidationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => 1,
            CliError::Core(e) if e.is_non_convergence() => 2,
            CliError::Core(_) => 1,
            CliError::ValidationFailed => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid_input",
            CliError::Core(e) if e.is_non_convergence() => "non_convergence",
            CliError::Core(_) => "invalid_input",
            CliError::Io(_) => "io",
            CliError::ValidationFailed => "validation_failed",
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        json!({
            "status": "error",
            "kind": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::ValidationFailed => f.write_str("one or more validation checks failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cpshift_core::Error> for CliError {
    fn from(e: cpshift_core::Error) -> Self {
        CliError::Core(e)
    }
}
