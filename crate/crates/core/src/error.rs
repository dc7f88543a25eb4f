use thiserror::Error;

use crate::characterize::{ConditionId, ConditionResult};

/// A reason a square matrix fails to be a distance matrix at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralIssue {
    NotSymmetric {
        row: String,
        col: String,
        value: String,
        mirror: String,
    },
    NonZeroDiagonal {
        label: String,
        value: String,
    },
    NonPositive {
        row: String,
        col: String,
        value: String,
    },
}

impl std::fmt::Display for StructuralIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructuralIssue::NotSymmetric {
                row,
                col,
                value,
                mirror,
            } => write!(f, "not symmetric at ({row},{col}): {value} vs {mirror}"),
            StructuralIssue::NonZeroDiagonal { label, value } => {
                write!(f, "nonzero diagonal at ({label},{label}): {value}")
            }
            StructuralIssue::NonPositive { row, col, value } => {
                write!(f, "non-positive entry at ({row},{col}): {value}")
            }
        }
    }
}

fn issue_list(issues: &[StructuralIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  - {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn condition_list(results: &[ConditionResult]) -> String {
    results
        .iter()
        .map(|r| r.id.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The family lies outside the scope of the characterization theorems.
    #[error("{family} is outside theorem scope: {relation}")]
    OutOfScope { family: String, relation: String },

    #[error("matrix dimension {found} does not match {family} (expected {expected})")]
    DimensionMismatch {
        family: String,
        expected: usize,
        found: usize,
    },

    #[error("graph is disconnected: no path between '{a}' and '{b}'")]
    Disconnected { a: String, b: String },

    #[error("geodesic cap exceeded between '{a}' and '{b}': more than {cap} shortest paths")]
    GeodesicCapExceeded { a: String, b: String, cap: u64 },

    #[error("not a distance matrix:\n{}", issue_list(.0))]
    Structure(Vec<StructuralIssue>),

    /// A condition check was invoked before its prerequisites were verified.
    #[error("condition {needed} does not hold, which is a prerequisite for this check")]
    PreconditionFailed {
        needed: ConditionId,
        result: Box<ConditionResult>,
    },

    #[error(
        "matrix is not realizable; failing conditions: {}",
        condition_list(failing)
    )]
    NotRealizable { failing: Vec<ConditionResult> },

    #[error("graph too large for exhaustive oracle: {found} vertices (limit {limit})")]
    SizeLimit { limit: usize, found: usize },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
