use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use chromastate::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Nonzero process exit codes; success is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Internal = 1,
    Input = 2,
    Cap = 3,
}

/// Failure carried up to `main`, with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: ExitCode,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: ExitCode::Input, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::SearchTooLarge(_) => ExitCode::Cap,
            Error::NotPrime(_)
            | Error::DimensionTooLarge(_)
            | Error::Parse { .. }
            | Error::SelfLoop(_)
            | Error::VertexOutOfRange { .. }
            | Error::ConflictingEdge { .. }
            | Error::ZeroWeight { .. }
            | Error::ImproperColoring(..)
            | Error::InvalidColoring(_)
            | Error::InvalidArgument(_)
            | Error::NotApplicable(_) => ExitCode::Input,
            Error::InverseOfZero(_) | Error::DimensionMismatch(_) => ExitCode::Internal,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        Self { path: path.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
}

/// One structured document per invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    pub input: InputDigest,
    pub status: Status,
    pub results: Value,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
