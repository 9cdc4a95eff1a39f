use thiserror::Error;

#[derive(Debug, Error)]
pub enum VolumeError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed volume file: {0}")]
    Format(String),
    #[error("{0}")]
    Domain(String),
    #[error("volume dimensions differ: {0:?} vs {1:?}")]
    ShapeMismatch((usize, usize, usize), (usize, usize, usize)),
    #[error(
        "placed {accepted} of {requested} splines before the budget of {attempts} draws ran out"
    )]
    RejectionBudget {
        accepted: usize,
        requested: usize,
        attempts: usize,
    },
    #[error("placed {placed} of {requested} pairwise non-adjacent seeds")]
    SeedCapacity { placed: usize, requested: usize },
    #[error(transparent)]
    Msp(#[from] msep_core::MspError),
    #[error(transparent)]
    Graph(#[from] msep_core::GraphError),
}

pub(crate) fn domain(msg: impl Into<String>) -> VolumeError {
    VolumeError::Domain(msg.into())
}
