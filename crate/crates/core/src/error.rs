use thiserror::Error;

use crate::lattice::Ambient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no primitive direction: zero vector")]
    ZeroVector,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("ambient mismatch: expected a vector in {expected:?}, found one in {found:?}")]
    AmbientMismatch { expected: Ambient, found: Ambient },
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("not a fan: {0}")]
    NotAFan(String),
    #[error("fan not complete: {0}")]
    NotComplete(String),
    #[error("divisor is not Q-Cartier on maximal cone {cone}")]
    NotQCartier { cone: usize },
    #[error("edge lengths undefined: divisor is not nef")]
    EdgeLengthsUndefined,
    #[error("proposition requires nef D")]
    RequiresNef,
    #[error("point outside cone")]
    OutsideCone,
    #[error("unbounded region")]
    Unbounded,
    #[error("unknown instance: {0}")]
    UnknownInstance(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degenerate sample after {0} retries")]
    Degenerate(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
