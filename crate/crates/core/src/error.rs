use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("range error: {0}")]
    Range(String),

    /// A factor `1 + mu*lambda` vanished, so its logarithm does not exist.
    #[error("factor vanishes at index {index}")]
    ZeroFactor { index: usize },

    #[error("pole at {0}")]
    Pole(String),

    /// Evaluation hit the pole behind entry `index` of a pole multiset.
    #[error("evaluation point is the pole at index {index}")]
    PoleFactor { index: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {what} (discrepancy {discrepancy:e}, tolerance {tolerance:e})")]
    Consistency {
        what: String,
        discrepancy: f64,
        tolerance: f64,
    },

    #[error("certification error: {0}")]
    Certification(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("io error on {path}: {msg}")]
    Io { path: PathBuf, msg: String },

    #[error("enumeration bound exceeded: {0}")]
    Bound(String),

    #[error("recognition failed: {0}")]
    Recognition(String),
}
