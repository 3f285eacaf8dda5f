//! Bases of classes: the p-basis, the canonical m-basis, the minimal
//! m-bases, and the tests deciding when a minimal m-basis is unique.

mod growth;
mod plus;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classes::{ClassSpec, MatrixSet};
use crate::error::{Error, Result};
use crate::genum::{minimal_elements, Enumerator, GroundSet};
use crate::matcore::{contains, BinaryMatrix, Permutation};

pub use growth::{is_minimal_containing, p_basis_growth, path_witnesses, GrowthReport, GrowthRow};
pub use plus::{class_plus_membership, ClassPlus, PlusOracle};

/// Largest search rank accepted by the basis searches.
pub const SEARCH_RANK_LIMIT: usize = 16;
/// Largest search size accepted for permutation classes.
pub const PERM_SEARCH_LIMIT: usize = 11;
/// Largest canonical basis handled by the subset search.
pub const SUBSET_SEARCH_LIMIT: usize = 20;

pub(crate) fn check_search_budget(ground: GroundSet, budget: usize, what: &'static str) -> Result<()> {
    let limit = match ground {
        GroundSet::Permutations => PERM_SEARCH_LIMIT,
        _ => SEARCH_RANK_LIMIT,
    };
    if budget > limit {
        return Err(Error::BudgetExceeded {
            what,
            requested: budget as u64,
            limit: limit as u64,
        });
    }
    Ok(())
}

/// How far a computed set is known to be exhaustive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// Exhaustive at every rank.
    Complete,
    /// Exhaustive for ranks up to the bound only.
    UpToRank(usize),
}

impl Completeness {
    pub fn is_complete(self) -> bool {
        self == Completeness::Complete
    }
}

/// The minimal elements of the ground set lying outside a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBasis {
    pub ground: GroundSet,
    pub members: MatrixSet,
    pub completeness: Completeness,
}

/// The minimal matrices that occur in no element of the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalMBasis {
    pub ground: GroundSet,
    pub members: MatrixSet,
    /// Candidates were examined up to this rank.
    pub dmax: usize,
    /// Rank up to which class members were searched for occurrences.
    pub budget: usize,
    /// False when some member was only shown absent from members up to
    /// `budget`, rather than from the whole class.
    pub certified: bool,
}

/// An inclusion-minimal subset of the canonical m-basis defining the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalMBasis {
    pub members: MatrixSet,
    /// The defining property was checked against the p-basis up to this rank.
    pub verified_upto: usize,
    /// True when the p-basis used was complete.
    pub exact: bool,
}

/// The permutations that contain `m` and are minimal for that property.
///
/// They all have size `rows + cols - ones`: every zero column of `m` receives
/// a new row with a single 1, and every zero row a new column with a single 1.
pub fn minimal_perms_containing(m: &BinaryMatrix) -> Result<Vec<Permutation>> {
    if !m.is_quasi_permutation() {
        return Err(Error::WrongGroundSet(GroundSet::QuasiPermutationMatrices));
    }
    // Fill zero columns with new rows, then zero rows with new columns,
    // trying every insertion position. Sets merge the many orders that lead
    // to the same matrix.
    let mut level: BTreeSet<BinaryMatrix> = BTreeSet::from([*m]);
    loop {
        let mut next = BTreeSet::new();
        let mut grew = false;
        for x in &level {
            let free = (0..x.cols()).find(|&j| x.column(j) == 0);
            let free_row = (0..x.rows()).find(|&i| x.row(i) == 0);
            match (free, free_row) {
                (Some(j), _) => {
                    grew = true;
                    for at in 0..=x.rows() {
                        next.insert(x.insert_row(at, 1 << j)?);
                    }
                }
                (None, Some(i)) => {
                    grew = true;
                    for at in 0..=x.cols() {
                        next.insert(x.insert_col(at, 1 << i)?);
                    }
                }
                (None, None) => {
                    next.insert(*x);
                }
            }
        }
        level = next;
        if !grew {
            break;
        }
    }
    level.iter().map(Permutation::from_matrix).collect()
}

/// The p-basis of `c`.
///
/// For permutation classes the basis is obtained from the excluded matrices
/// and is complete regardless of `rmax`. For the other ground sets every
/// element of rank at most `rmax` is examined.
pub fn p_basis(c: &ClassSpec, rmax: usize) -> Result<PBasis> {
    let g = c.ground();
    if g == GroundSet::Permutations {
        let mut all = Vec::new();
        for m in c.excluded().members().iter().filter(|m| m.is_quasi_permutation()) {
            all.extend(minimal_perms_containing(m)?.iter().map(Permutation::to_matrix));
        }
        return Ok(PBasis {
            ground: g,
            members: MatrixSet::new(minimal_elements(&all)),
            completeness: Completeness::Complete,
        });
    }
    check_search_budget(g, rmax, "p_basis rank")?;
    // Filtering a plain enumeration beats prefix pruning here: the basis
    // grows to hundreds of members and pruning checks all of them per node.
    let e = Enumerator::new(g);
    let mut found: Vec<BinaryMatrix> = Vec::new();
    for r in g.min_rank()..=rmax {
        let fresh = e.par_collect_rank(r, |m| !c.avoids_unchecked(m) && !found.iter().any(|b| contains(m, b)));
        found.extend(fresh);
    }
    Ok(PBasis {
        ground: g,
        members: MatrixSet::new(found),
        completeness: Completeness::UpToRank(rmax),
    })
}

/// The universe canonical m-basis members are drawn from.
pub fn candidate_ground(g: GroundSet) -> GroundSet {
    match g {
        GroundSet::Permutations | GroundSet::QuasiPermutationMatrices => GroundSet::QuasiPermutationMatrices,
        GroundSet::Polyominoes | GroundSet::BinaryMatrices => GroundSet::BinaryMatrices,
    }
}

/// The canonical m-basis of `c` restricted to candidates of rank at most
/// `dmax`. Occurrences in polyomino classes are searched up to `budget`.
pub fn canonical_m_basis(c: &ClassSpec, dmax: usize, budget: usize) -> Result<CanonicalMBasis> {
    let g = c.ground();
    check_search_budget(g, budget, "canonical_m_basis budget")?;
    check_search_budget(GroundSet::BinaryMatrices, dmax, "canonical_m_basis dmax")?;
    let oracle = PlusOracle::new(c, budget);
    let cg = candidate_ground(g);
    let mut found: Vec<BinaryMatrix> = Vec::new();
    let mut certified = true;
    for r in cg.min_rank()..=dmax {
        // a candidate containing a basis member is outside C+ but not minimal,
        // and every smaller non-member is above some basis member already found
        let cands = Enumerator::avoiding(cg, &found).collect_rank(r);
        let mut fresh = Vec::new();
        for m in cands {
            let p = oracle.check(&m)?;
            if !p.member {
                certified &= p.complete;
                fresh.push(m);
            }
        }
        found.extend(fresh);
    }
    Ok(CanonicalMBasis {
        ground: g,
        members: MatrixSet::new(found),
        dmax,
        budget,
        certified,
    })
}

/// Every inclusion-minimal subset `B` of the canonical m-basis with
/// `Av(B) = C`, checked against the p-basis up to `rmax`.
///
/// `Av(B)` always contains `C` since no member of `B` occurs in `C`; it is
/// contained in `C` exactly when every p-basis element contains a member of
/// `B`. The search is a hitting-set search over the canonical members.
pub fn minimal_m_bases(c: &ClassSpec, canonical: &CanonicalMBasis, rmax: usize) -> Result<Vec<MinimalMBasis>> {
    let members = canonical.members.members();
    if members.len() > SUBSET_SEARCH_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "minimal_m_bases canonical size",
            requested: members.len() as u64,
            limit: SUBSET_SEARCH_LIMIT as u64,
        });
    }
    let pb = p_basis(c, rmax)?;
    let masks: Vec<u32> = pb
        .members
        .members()
        .iter()
        .map(|p| {
            members
                .iter()
                .enumerate()
                .filter(|(_, m)| contains(p, m))
                .fold(0u32, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let n = members.len();
    let mut hits: Vec<u32> = Vec::new();
    for k in 1..=n {
        for s in masks_of_size(n, k) {
            if hits.iter().any(|&h| h & s == h) {
                continue;
            }
            if masks.iter().all(|&m| m & s != 0) {
                hits.push(s);
            }
        }
    }
    let verified_upto = match pb.completeness {
        Completeness::Complete => rmax.max(canonical.dmax),
        Completeness::UpToRank(r) => r,
    };
    let mut out: Vec<MinimalMBasis> = hits
        .into_iter()
        .map(|s| MinimalMBasis {
            members: (0..n).filter(|i| s >> i & 1 == 1).map(|i| members[i]).collect(),
            verified_upto,
            exact: pb.completeness.is_complete() && canonical.certified,
        })
        .collect();
    out.sort_by(|a, b| (a.members.len(), a.members.members()).cmp(&(b.members.len(), b.members.members())));
    Ok(out)
}

/// `k`-bit masks below `1 << n`, increasing.
fn masks_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect()
}

/// Outcome of testing whether the p-basis is a minimal m-basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBasisMinimality {
    pub holds: bool,
    /// No member can be dropped.
    pub irredundant: bool,
    /// No member can be replaced by one of its proper submatrices.
    pub irreducible: bool,
    pub bound: usize,
    /// A member and a proper submatrix of it that could replace it.
    pub reducible_pair: Option<(BinaryMatrix, BinaryMatrix)>,
}

/// Whether the p-basis of `c` (up to `rmax`) is a minimal m-basis.
///
/// A member `M` can be replaced by a proper submatrix `M'` without changing
/// the class exactly when `M'` occurs in no class member, so irreducibility
/// asks that every proper submatrix of every member occurs in the class.
pub fn p_basis_is_minimal_m_basis(c: &ClassSpec, rmax: usize) -> Result<PBasisMinimality> {
    let pb = p_basis(c, rmax)?;
    let ms = pb.members.members();
    let irredundant = ms
        .iter()
        .enumerate()
        .all(|(i, m)| !ms.iter().enumerate().any(|(j, o)| i != j && contains(m, o)));
    let oracle = PlusOracle::new(c, rmax.max(c.ground().min_rank()));
    let mut reducible_pair = None;
    'outer: for m in ms {
        for s in proper_submatrices(m) {
            if !oracle.check(&s)?.member {
                reducible_pair = Some((*m, s));
                break 'outer;
            }
        }
    }
    let irreducible = reducible_pair.is_none();
    Ok(PBasisMinimality {
        holds: irredundant && irreducible,
        irredundant,
        irreducible,
        bound: rmax,
        reducible_pair,
    })
}

/// Distinct proper submatrices of `m`, sorted.
pub fn proper_submatrices(m: &BinaryMatrix) -> Vec<BinaryMatrix> {
    let fr = (1u32 << m.rows()) - 1;
    let fc = (1u32 << m.cols()) - 1;
    let mut out = BTreeSet::new();
    for rm in 1..=fr {
        for cm in 1..=fc {
            if rm == fr && cm == fc {
                continue;
            }
            out.extend(m.select(rm, cm));
        }
    }
    out.into_iter().collect()
}

/// Per-member separating witnesses for a canonical m-basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub holds: bool,
    pub budget: usize,
    /// Each member with a ground element containing it and no other member.
    pub witnesses: Vec<(BinaryMatrix, Option<BinaryMatrix>)>,
}

/// Looks, for each canonical member `M`, for an element of the ground set of
/// rank at most `budget` containing `M` and no other member. When every
/// member has one, the canonical m-basis is the unique minimal m-basis.
pub fn separating_witness_uniqueness(
    c: &ClassSpec,
    canonical: &CanonicalMBasis,
    budget: usize,
) -> Result<Separation> {
    let g = c.ground();
    check_search_budget(g, budget, "separating witness budget")?;
    let ms = canonical.members.members();
    let mut witnesses = Vec::with_capacity(ms.len());
    for (i, m) in ms.iter().enumerate() {
        let others: Vec<BinaryMatrix> = ms
            .iter()
            .enumerate()
            .filter(|&(j, o)| j != i && (g != GroundSet::Permutations || o.is_quasi_permutation()))
            .map(|(_, o)| *o)
            .collect();
        let e = Enumerator::avoiding(g, &others);
        let w = (g.min_rank()..=budget)
            .find_map(|r| e.find_first_in_rank(r, |x| contains(x, m)));
        witnesses.push((*m, w));
    }
    Ok(Separation {
        holds: witnesses.iter().all(|(_, w)| w.is_some()),
        budget,
        witnesses,
    })
}

/// A basis report in a stable, serializable shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub kind: String,
    pub ground: GroundSet,
    pub spec_hash: String,
    pub bound: usize,
    pub complete: bool,
    /// Each item is a list of matrices, top row first.
    pub items: Vec<Vec<BinaryMatrix>>,
}

impl Manifest {
    pub fn from_p_basis(c: &ClassSpec, b: &PBasis, rmax: usize) -> Self {
        Manifest {
            kind: "p".into(),
            ground: c.ground(),
            spec_hash: c.spec_hash(),
            bound: match b.completeness {
                Completeness::Complete => rmax,
                Completeness::UpToRank(r) => r,
            },
            complete: b.completeness.is_complete(),
            items: b.members.members().iter().map(|m| vec![*m]).collect(),
        }
    }

    pub fn from_canonical(c: &ClassSpec, b: &CanonicalMBasis) -> Self {
        Manifest {
            kind: "canonical".into(),
            ground: c.ground(),
            spec_hash: c.spec_hash(),
            bound: b.dmax,
            complete: b.certified,
            items: b.members.members().iter().map(|m| vec![*m]).collect(),
        }
    }

    pub fn from_minimal(c: &ClassSpec, bases: &[MinimalMBasis], bound: usize) -> Self {
        Manifest {
            kind: "minimal".into(),
            ground: c.ground(),
            spec_hash: c.spec_hash(),
            bound,
            complete: bases.iter().all(|b| b.exact),
            items: bases.iter().map(|b| b.members.members().to_vec()).collect(),
        }
    }

    /// Plain-text rendering: a header, then each item's matrices.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# kind {}\n# ground {}\n# spec {}\n# bound {}\n# complete {}\n",
            self.kind,
            self.ground.short_name(),
            self.spec_hash,
            self.bound,
            self.complete
        );
        for (i, item) in self.items.iter().enumerate() {
            s.push_str(&format!("\n# item {}\n", i + 1));
            s.push_str(&crate::matcore::format_matrices(item));
        }
        s
    }
}
