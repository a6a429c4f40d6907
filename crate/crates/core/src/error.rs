use thiserror::Error;

use crate::scalars::ScalarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("invalid algebra type: {0}")]
    InvalidType(String),
    #[error("invalid parabolic spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("not quasi-Heisenberg: {0}")]
    NotQuasiHeisenberg(String),
    #[error("excluded: three simple ideals ({0})")]
    Excluded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("axiom {axiom} violated: {detail}")]
    Axiom { axiom: &'static str, detail: String },
    #[error("weight {0} is not dominant")]
    NonDominant(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
