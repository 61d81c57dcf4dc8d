use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("mismatched algebras: {0}")]
    AlgebraMismatch(String),
    #[error("unsupported convolution: {0}")]
    Unsupported(String),
    #[error("renormalization undefined: {0}")]
    ZeroSpectral(String),
    #[error("module does not split over the rationals: {0}")]
    NonSplit(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
