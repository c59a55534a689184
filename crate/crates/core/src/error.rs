// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Shapes or tensor-factor lists that do not fit together.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A parameter outside its documented domain.
    #[error("usage error: {0}")]
    Usage(String),

    /// An input that violates an operation's contract (e.g. a non-Hermitian
    /// matrix handed to the Hermitian eigensolver).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A conditional state was requested for an outcome of zero probability.
    #[error("conditional state undefined: {0}")]
    UndefinedConditional(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval<T: crate::Real>(name: &str, x: T) -> Result<()> {
    if x.is_finite() && x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::Usage(format!("{name} must lie in [0, 1], got {x}")))
    }
}
