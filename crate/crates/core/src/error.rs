// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by contract checks across the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("mode {mode} out of range for a {modes}-mode state")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("state has zero norm")]
    Degenerate,

    #[error("input is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("Fock truncation {truncation} too small; at least {required} levels needed")]
    Truncation { truncation: usize, required: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed state document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
