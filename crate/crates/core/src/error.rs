use thiserror::Error;

use crate::lattice::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: requested {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid lattice spec: {}", join_violations(.0))]
    InvalidSpec(Vec<Violation>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed bitstring{}: {message}", .field.map(|f| format!(" (field {f})")).unwrap_or_default())]
    Format { field: Option<usize>, message: String },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn join_violations(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
