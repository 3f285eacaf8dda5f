//! Submatrix containment, avoidance-defined classes of permutations and
//! polyominoes, and the computation of their bases.
//!
//! Matrices use bottom-up row numbering throughout: row 0 is the bottom row.
//! Text input and output list the top row first.

pub mod bases;
pub mod classes;
pub mod error;
pub mod genum;
pub mod matcore;
pub mod named;
pub mod polygeo;
pub mod suites;
pub mod wilfkit;

pub use error::{Error, Result};
pub use classes::{Budget, ClassSpec, CountSequence, MatrixSet};
pub use genum::GroundSet;
pub use matcore::{contains, find_embedding, BinaryMatrix, Embedding, Permutation};
