// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element is not in the subring {0}")]
    NotInSubring(&'static str),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("euclidean step failed to decrease the norm")]
    EuclidStalled,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
