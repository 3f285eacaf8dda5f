//! Matrices, permutations and the submatrix order.

mod containment;
mod matrix;
mod permutation;
mod text;

pub use containment::{contains, contains_any, find_embedding, Embedding};
pub use matrix::{BinaryMatrix, MAX_DIM};
pub(crate) use matrix::{row_from_key, width_mask};
#[cfg(test)]
pub(crate) use matrix::row_key;
pub use permutation::Permutation;
pub use text::{format_matrices, parse_matrices};
