use thiserror::Error;

use crate::uea::GenSymbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("generator {0} does not belong to the subalgebra")]
    NotInSubalgebra(GenSymbol),
    #[error("quotient not supported: {0}")]
    UnsupportedQuotient(String),
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("reduction stalled: {0}")]
    ReductionStalled(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
