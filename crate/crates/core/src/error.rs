use thiserror::Error;

use crate::ladder::LadderTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence in {what} after {iterations} iterations (best bracket [{lo}, {hi}])")]
    Convergence {
        what: &'static str,
        iterations: usize,
        lo: String,
        hi: String,
    },

    #[error("branch error: {0}")]
    Branch(String),

    #[error("certification failed at level {level}: residual {residual}")]
    Certification {
        level: usize,
        residual: String,
        trace: Box<LadderTrace>,
    },

    #[error("invalid precision context: {0}")]
    Precision(String),

    #[error("unknown identity id `{id}`; registry: {registry}")]
    UnknownIdentity { id: String, registry: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
