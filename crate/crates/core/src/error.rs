use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("counter overflow while computing {0}")]
    Overflow(String),

    #[error("{0}")]
    Range(String),

    #[error("degenerate graph: {0}")]
    Degenerate(String),

    #[error("invalid generator config: {0}")]
    Config(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("row {row}: x = {x} is outside the domain of log10")]
    Domain { row: usize, x: f64 },
}
