use std::fmt;

use thiserror::Error;

/// A located problem in an expression or model file. Line 0 means "not in a file".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        } else {
            write!(f, "column {}: {}", self.column, self.message)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by an expression that normalizes to zero")]
    DivisionByZeroExpr,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("{} error(s) in model file; first: {}", .0.len(), .0.first().map(|e| e.to_string()).unwrap_or_default())]
    Model(Vec<ParseError>),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("singular metric: the classical determinant is zero")]
    SingularMetric,
    #[error("connection is not central; {} nonzero component(s)", .0.len())]
    CentralityViolation(Vec<String>),
    #[error("{0}")]
    Invalid(String),
    #[error("{stage}: {source}")]
    Stage { stage: String, source: Box<Error> },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZeroExpr => "division_by_zero",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Parse(_) => "parse",
            Error::Model(_) => "model",
            Error::Invariant(_) => "invariant",
            Error::SingularMetric => "singular_metric",
            Error::CentralityViolation(_) => "centrality_violation",
            Error::Invalid(_) => "invalid",
            Error::Stage { source, .. } => source.kind(),
        }
    }

    pub fn in_stage(self, stage: &str) -> Error {
        Error::Stage { stage: stage.to_owned(), source: Box::new(self) }
    }
}
