use thiserror::Error;

use crate::instance::NodeId;

/// Errors produced while loading instances or running solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("cannot merge instances: {0}")]
    Merge(String),

    #[error("node {0} is not a core node")]
    UnknownNode(NodeId),

    #[error("facility {facility} cannot be reached from the partial tree within the hop limit")]
    Infeasible { facility: NodeId },

    #[error("invalid harmony vector: {0}")]
    InvalidVector(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("solution failed validation: {0}")]
    InvalidSolution(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
