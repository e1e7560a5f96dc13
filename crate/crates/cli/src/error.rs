use std::fmt;
use std::io;

use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Lib(modknot::Error),
    Io(io::Error),
    Usage(String),
    /// A check that ran to completion and found a disagreement.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                modknot::Error::Parse { .. }
                | modknot::Error::Unknown { .. }
                | modknot::Error::InvalidArgument(_)
                | modknot::Error::EmptyCycle
                | modknot::Error::EmptyPattern => 2,
                _ => 1,
            },
            CliError::Io(_) | CliError::Check(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
            CliError::Check(_) => "check_failed",
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
            CliError::Usage(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

impl From<modknot::Error> for CliError {
    fn from(e: modknot::Error) -> CliError {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError::Io(e)
    }
}
