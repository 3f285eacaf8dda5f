//! Rank-ordered exhaustive generation of the four ground sets, and poset
//! utilities.

mod engine;
mod poset;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::BinaryMatrix;

pub use engine::{Enumerator, Shard};
pub use poset::{is_antichain, minimal_elements};

/// The universe a class lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroundSet {
    /// Permutation matrices, graded by size.
    Permutations,
    /// Polyominoes, graded by semi-perimeter.
    Polyominoes,
    /// All binary matrices, graded by semi-perimeter.
    BinaryMatrices,
    /// Matrices with at most one 1 per row and column, graded by semi-perimeter.
    QuasiPermutationMatrices,
}

impl GroundSet {
    pub const ALL: [GroundSet; 4] = [
        GroundSet::Permutations,
        GroundSet::Polyominoes,
        GroundSet::BinaryMatrices,
        GroundSet::QuasiPermutationMatrices,
    ];

    /// Whether `m` is an element of this ground set.
    pub fn admits(self, m: &BinaryMatrix) -> bool {
        match self {
            GroundSet::Permutations => m.is_permutation_matrix(),
            GroundSet::Polyominoes => m.is_polyomino(),
            GroundSet::BinaryMatrices => true,
            GroundSet::QuasiPermutationMatrices => m.is_quasi_permutation(),
        }
    }

    /// Size for permutations, `rows + cols` otherwise.
    pub fn rank_of(self, m: &BinaryMatrix) -> usize {
        match self {
            GroundSet::Permutations => m.rows(),
            _ => m.rank(),
        }
    }

    /// Smallest rank holding any element.
    pub fn min_rank(self) -> usize {
        match self {
            GroundSet::Permutations => 1,
            _ => 2,
        }
    }

    /// Short name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            GroundSet::Permutations => "perm",
            GroundSet::Polyominoes => "poly",
            GroundSet::BinaryMatrices => "binary",
            GroundSet::QuasiPermutationMatrices => "quasi",
        }
    }

    /// Checks membership, reporting [`Error::WrongGroundSet`] on failure.
    pub fn check(self, m: &BinaryMatrix) -> Result<()> {
        if self.admits(m) {
            Ok(())
        } else {
            Err(Error::WrongGroundSet(self))
        }
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroundSet::Permutations => "permutations",
            GroundSet::Polyominoes => "polyominoes",
            GroundSet::BinaryMatrices => "binary matrices",
            GroundSet::QuasiPermutationMatrices => "quasi-permutation matrices",
        })
    }
}

impl FromStr for GroundSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "perm" | "perms" | "permutations" => Ok(GroundSet::Permutations),
            "poly" | "polyominoes" => Ok(GroundSet::Polyominoes),
            "binary" | "matrices" | "binary-matrices" => Ok(GroundSet::BinaryMatrices),
            "quasi" | "quasi-permutations" | "quasi-permutation-matrices" => {
                Ok(GroundSet::QuasiPermutationMatrices)
            }
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown ground set {other:?}"),
            }),
        }
    }
}

/// Every element of rank exactly `r`, in canonical order.
pub fn generate(g: GroundSet, r: usize) -> Vec<BinaryMatrix> {
    Enumerator::new(g).collect_rank(r)
}

/// Every element of rank at most `rmax`, rank-ascending.
pub fn generate_upto(g: GroundSet, rmax: usize) -> Vec<BinaryMatrix> {
    let e = Enumerator::new(g);
    (g.min_rank()..=rmax).flat_map(|r| e.collect_rank(r)).collect()
}
