use thiserror::Error;

use crate::notation::Diagnostic;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown scenario label `{0}`")]
    UnknownLabel(String),
    #[error("pipeline configuration has no rules")]
    EmptyRuleSet,
    #[error("{path}:{line}: {message}")]
    Config { path: String, line: usize, message: String },
    #[error("concept set is incomplete: {0}")]
    IncompleteConceptSet(String),
    #[error("space contains scenario {0} more than once")]
    DuplicateScenario(String),
    #[error("no path between the given scenarios")]
    NoPath,
    #[error("scenario is not part of the search space")]
    NotInSpace,
    #[error("trajectory has no steps")]
    EmptyTrajectory,
    #[error("cannot parse scenario: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Parse(Vec<Diagnostic>),
    #[error("malformed context: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
