use thiserror::Error;

use crate::genum::GroundSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix dimensions {rows}x{cols} out of range (1..={max} each)")]
    InvalidDimensions { rows: usize, cols: usize, max: usize },

    #[error("not a permutation matrix")]
    NotAPermutationMatrix,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix is not an element of the {0} ground set")]
    WrongGroundSet(GroundSet),

    #[error("budget exceeded: {what} (requested {requested}, limit {limit})")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
