use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bases::{check_search_budget, minimal_perms_containing};
use crate::classes::ClassSpec;
use crate::error::{Error, Result};
use crate::genum::GroundSet;
use crate::matcore::{contains, BinaryMatrix};

/// Whether a matrix occurs in some element of a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPlus {
    pub member: bool,
    /// False when `member` is false only because the search stopped at the
    /// budget.
    pub complete: bool,
    /// A class element containing the matrix.
    pub witness: Option<BinaryMatrix>,
}

impl ClassPlus {
    fn found(w: BinaryMatrix) -> Self {
        ClassPlus {
            member: true,
            complete: true,
            witness: Some(w),
        }
    }

    fn absent(complete: bool) -> Self {
        ClassPlus {
            member: false,
            complete,
            witness: None,
        }
    }
}

/// Answers repeated occurrence queries for one class, keeping the class
/// members of each rank once they have been generated.
pub struct PlusOracle<'c> {
    class: &'c ClassSpec,
    budget: usize,
    by_rank: Vec<OnceLock<Vec<BinaryMatrix>>>,
}

impl<'c> PlusOracle<'c> {
    pub fn new(class: &'c ClassSpec, budget: usize) -> Self {
        PlusOracle {
            class,
            budget,
            by_rank: (0..=budget).map(|_| OnceLock::new()).collect(),
        }
    }

    fn members(&self, r: usize) -> &[BinaryMatrix] {
        self.by_rank[r].get_or_init(|| self.class.members(r))
    }

    fn scan(&self, m: &BinaryMatrix, from: usize, to: usize) -> Option<BinaryMatrix> {
        (from..=to).find_map(|r| self.members(r).iter().find(|x| contains(x, m)).copied())
    }

    pub fn check(&self, m: &BinaryMatrix) -> Result<ClassPlus> {
        let c = self.class;
        match c.ground() {
            // Every submatrix of a quasi-permutation (or binary) matrix stays
            // in the ground set, so the class is its own closure.
            GroundSet::BinaryMatrices | GroundSet::QuasiPermutationMatrices => {
                if c.ground().admits(m) && c.avoids_unchecked(m) {
                    Ok(ClassPlus::found(*m))
                } else {
                    Ok(ClassPlus::absent(true))
                }
            }
            // A permutation containing m contains a minimal one, whose size is
            // fixed; the class is downward closed, so that size suffices.
            GroundSet::Permutations => {
                if !m.is_quasi_permutation() {
                    return Ok(ClassPlus::absent(true));
                }
                let n = m.rank() - m.count_ones();
                if n > self.budget {
                    return Err(Error::BudgetExceeded {
                        what: "class_plus permutation size",
                        requested: n as u64,
                        limit: self.budget as u64,
                    });
                }
                Ok(match self.scan(m, n, n) {
                    Some(w) => ClassPlus::found(w),
                    None => ClassPlus::absent(true),
                })
            }
            GroundSet::Polyominoes => {
                if m.is_polyomino() && c.avoids_unchecked(m) {
                    return Ok(ClassPlus::found(*m));
                }
                if m.rank() > self.budget {
                    return Ok(ClassPlus::absent(false));
                }
                Ok(match self.scan(m, m.rank(), self.budget) {
                    Some(w) => ClassPlus::found(w),
                    None => ClassPlus::absent(false),
                })
            }
        }
    }
}

/// Whether `m` occurs in some member of `c`.
///
/// For permutation classes the answer is exact: it is enough to test the
/// minimal permutations containing `m`. For polyomino classes members up to
/// rank `budget` are searched and a negative answer is marked incomplete.
pub fn class_plus_membership(c: &ClassSpec, m: &BinaryMatrix, budget: usize) -> Result<ClassPlus> {
    check_search_budget(c.ground(), budget, "class_plus budget")?;
    if c.ground() == GroundSet::Permutations {
        if !m.is_quasi_permutation() {
            return Ok(ClassPlus::absent(true));
        }
        let n = m.rank() - m.count_ones();
        if n > budget {
            return Err(Error::BudgetExceeded {
                what: "class_plus permutation size",
                requested: n as u64,
                limit: budget as u64,
            });
        }
        for p in minimal_perms_containing(m)? {
            let pm = p.to_matrix();
            if c.avoids_unchecked(&pm) {
                return Ok(ClassPlus::found(pm));
            }
        }
        return Ok(ClassPlus::absent(true));
    }
    PlusOracle::new(c, budget).check(m)
}
