//! Classes defined by avoidance of a finite set of matrices: membership,
//! counting and bounded comparison.

mod cache;
mod sequence;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::genum::{is_antichain, Enumerator, GroundSet};
use crate::matcore::{contains, format_matrices, BinaryMatrix};

pub use cache::ClassCache;
pub use sequence::CountSequence;

/// A sorted, duplicate-free set of matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MatrixSet {
    members: Vec<BinaryMatrix>,
    antichain: bool,
}

impl MatrixSet {
    pub fn new(members: impl IntoIterator<Item = BinaryMatrix>) -> Self {
        let mut members: Vec<BinaryMatrix> = members.into_iter().collect();
        members.sort();
        members.dedup();
        let antichain = is_antichain(&members);
        MatrixSet { members, antichain }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(crate::matcore::parse_matrices(text)?))
    }

    pub fn members(&self) -> &[BinaryMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether no member contains another (checked at construction).
    pub fn is_antichain(&self) -> bool {
        self.antichain
    }

    pub fn contains_matrix(&self, m: &BinaryMatrix) -> bool {
        self.members.binary_search(m).is_ok()
    }

    /// Members in the matrix text format, blank-line separated.
    pub fn to_text(&self) -> String {
        format_matrices(&self.members)
    }
}

impl FromIterator<BinaryMatrix> for MatrixSet {
    fn from_iter<I: IntoIterator<Item = BinaryMatrix>>(iter: I) -> Self {
        Self::new(iter)
    }
}

/// Largest rank each ground set may be enumerated to unless overridden.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub permutations: usize,
    pub polyominoes: usize,
    pub binary_matrices: usize,
    pub quasi_permutations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            permutations: 10,
            polyominoes: 11,
            binary_matrices: 9,
            quasi_permutations: 12,
        }
    }
}

impl Budget {
    /// The same bound for every ground set.
    pub fn uniform(rank: usize) -> Self {
        Budget {
            permutations: rank,
            polyominoes: rank,
            binary_matrices: rank,
            quasi_permutations: rank,
        }
    }

    pub fn limit(&self, g: GroundSet) -> usize {
        match g {
            GroundSet::Permutations => self.permutations,
            GroundSet::Polyominoes => self.polyominoes,
            GroundSet::BinaryMatrices => self.binary_matrices,
            GroundSet::QuasiPermutationMatrices => self.quasi_permutations,
        }
    }

    pub fn check(&self, g: GroundSet, rank: usize, what: &'static str) -> Result<()> {
        let limit = self.limit(g);
        if rank > limit {
            return Err(Error::BudgetExceeded {
                what,
                requested: rank as u64,
                limit: limit as u64,
            });
        }
        Ok(())
    }
}

/// The class of elements of a ground set avoiding every excluded matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    ground: GroundSet,
    excluded: MatrixSet,
    warnings: Vec<String>,
}

impl ClassSpec {
    pub fn new(ground: GroundSet, excluded: MatrixSet) -> Self {
        let mut warnings = Vec::new();
        if ground == GroundSet::Permutations {
            for m in excluded.members().iter().filter(|m| !m.is_quasi_permutation()) {
                warnings.push(format!(
                    "{m:?} is not a quasi-permutation matrix; no permutation contains it, so it imposes no restriction"
                ));
            }
        }
        ClassSpec {
            ground,
            excluded,
            warnings,
        }
    }

    /// Convenience constructor from matrices.
    pub fn avoiding(ground: GroundSet, excluded: impl IntoIterator<Item = BinaryMatrix>) -> Self {
        Self::new(ground, MatrixSet::new(excluded))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn excluded(&self) -> &MatrixSet {
        &self.excluded
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Canonical text: ground set name, then the excluded matrices.
    pub fn canonical_text(&self) -> String {
        format!("ground {}\n\n{}", self.ground.short_name(), self.excluded.to_text())
    }

    /// Hex SHA-256 of [`Self::canonical_text`].
    pub fn spec_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }

    /// Whether `x` avoids every excluded matrix. `x` must be in the ground set.
    pub fn avoids(&self, x: &BinaryMatrix) -> Result<bool> {
        self.ground.check(x)?;
        Ok(self.avoids_unchecked(x))
    }

    /// [`Self::avoids`] without the ground-set check.
    pub fn avoids_unchecked(&self, x: &BinaryMatrix) -> bool {
        !self.excluded.members().iter().any(|m| contains(x, m))
    }

    /// A generator restricted to the class. Excluded matrices that no
    /// element of the ground set can contain are dropped.
    pub fn enumerator(&self) -> Enumerator {
        let useful: Vec<BinaryMatrix> = self
            .excluded
            .members()
            .iter()
            .filter(|m| match self.ground {
                GroundSet::Permutations | GroundSet::QuasiPermutationMatrices => m.is_quasi_permutation(),
                _ => true,
            })
            .copied()
            .collect();
        Enumerator::avoiding(self.ground, &useful)
    }

    /// Members of rank `r`, in canonical order.
    pub fn members(&self, r: usize) -> Vec<BinaryMatrix> {
        self.enumerator().par_collect_rank(r, |_| true)
    }

    /// Members of every rank up to `rmax`, rank-ascending.
    pub fn members_upto(&self, rmax: usize) -> Vec<BinaryMatrix> {
        let e = self.enumerator();
        (self.ground.min_rank()..=rmax)
            .flat_map(|r| e.par_collect_rank(r, |_| true))
            .collect()
    }

    /// Number of members at each rank from the smallest one up to `rmax`.
    pub fn count_sequence(&self, rmax: usize, budget: &Budget) -> Result<CountSequence> {
        budget.check(self.ground, rmax, "count_sequence rank")?;
        let e = self.enumerator();
        let terms = (self.ground.min_rank()..=rmax)
            .map(|r| (r, e.par_count_rank(r, |_| true)))
            .collect();
        CountSequence::new(self.ground, terms)
    }

    /// [`Self::count_sequence`], reading and filling an on-disk cache.
    pub fn count_sequence_cached(&self, rmax: usize, budget: &Budget, cache: &ClassCache) -> Result<CountSequence> {
        budget.check(self.ground, rmax, "count_sequence rank")?;
        let e = self.enumerator();
        let mut terms = Vec::new();
        for r in self.ground.min_rank()..=rmax {
            let n = match cache.get_count(self, r)? {
                Some(n) => n,
                None => {
                    let n = e.par_count_rank(r, |_| true);
                    cache.put_count(self, r, n)?;
                    n
                }
            };
            terms.push((r, n));
        }
        CountSequence::new(self.ground, terms)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.excluded.members().iter().map(|m| format!("{m:?}")).collect();
        write!(f, "Av_{}({})", self.ground.short_name(), ms.join(", "))
    }
}

/// A statement checked exhaustively up to a rank bound. It says nothing
/// about larger ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedCheck {
    pub holds: bool,
    pub bound: usize,
    /// The first counterexample found, if any.
    pub counterexample: Option<BinaryMatrix>,
}

impl fmt::Display for BoundedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None if self.holds => write!(f, "holds (verified ≤ {})", self.bound),
            None => write!(f, "fails (checked ≤ {})", self.bound),
            Some(m) => write!(f, "fails at {m:?} (checked ≤ {})", self.bound),
        }
    }
}

/// Compares two classes of the same ground set rank by rank up to `rmax`.
pub fn equal_classes(c1: &ClassSpec, c2: &ClassSpec, rmax: usize) -> Result<BoundedCheck> {
    if c1.ground() != c2.ground() {
        return Err(Error::WrongGroundSet(c2.ground()));
    }
    for r in c1.ground().min_rank()..=rmax {
        let a = c1.members(r);
        let b = c2.members(r);
        if a != b {
            let diff = a
                .iter()
                .find(|x| b.binary_search(x).is_err())
                .or_else(|| b.iter().find(|x| a.binary_search(x).is_err()))
                .copied();
            return Ok(BoundedCheck {
                holds: false,
                bound: rmax,
                counterexample: diff,
            });
        }
    }
    Ok(BoundedCheck {
        holds: true,
        bound: rmax,
        counterexample: None,
    })
}

/// Whether every element of `ground` contained in a member of `s` is itself
/// in `s`. Only `s` is inspected, so the answer concerns ranks up to the
/// largest rank present.
pub fn is_downward_closed(s: &[BinaryMatrix], ground: GroundSet) -> BoundedCheck {
    let mut sorted = s.to_vec();
    sorted.sort();
    sorted.dedup();
    let bound = sorted.iter().map(|m| ground.rank_of(m)).max().unwrap_or(0);
    for m in &sorted {
        for sub in ground_predecessors(m, ground) {
            if sorted.binary_search(&sub).is_err() {
                return BoundedCheck {
                    holds: false,
                    bound,
                    counterexample: Some(sub),
                };
            }
        }
    }
    BoundedCheck {
        holds: true,
        bound,
        counterexample: None,
    }
}

/// Elements of `ground` strictly below `m` from which every smaller element
/// of `ground` can be reached by repeating the step.
///
/// Permutations: delete one entry (its row and column). Binary and
/// quasi-permutation matrices: delete one line. Polyominoes: a proper
/// polyomino submatrix need not be reachable through polyominoes one line
/// at a time, so every proper submatrix is tried.
fn ground_predecessors(m: &BinaryMatrix, ground: GroundSet) -> Vec<BinaryMatrix> {
    let rows = crate::matcore::width_mask(m.rows());
    let cols = crate::matcore::width_mask(m.cols());
    match ground {
        GroundSet::Permutations => (0..m.cols())
            .filter_map(|j| {
                let i = m.column(j).trailing_zeros();
                m.select(rows & !(1 << i), cols & !(1 << j))
            })
            .collect(),
        GroundSet::BinaryMatrices | GroundSet::QuasiPermutationMatrices => m.single_deletions(),
        GroundSet::Polyominoes => {
            let mut out = Vec::new();
            for rm in 1..=rows {
                for cm in 1..=cols {
                    if rm == rows && cm == cols {
                        continue;
                    }
                    if let Some(s) = m.select(rm, cm) {
                        if s.is_polyomino() {
                            out.push(s);
                        }
                    }
                }
            }
            out.sort();
            out.dedup();
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::Permutation;

    fn m(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    fn pm(s: &str) -> BinaryMatrix {
        s.parse::<Permutation>().unwrap().to_matrix()
    }

    fn perms(ps: &[&str]) -> ClassSpec {
        ClassSpec::avoiding(GroundSet::Permutations, ps.iter().map(|p| pm(p)))
    }

    #[test]
    fn avoids_examples() {
        let s1 = ClassSpec::avoiding(GroundSet::Polyominoes, [m("10/01")]);
        assert!(s1.avoids(&m("011/110")).unwrap());
        assert!(s1.avoids(&m("0011/0111/1110")).unwrap());
        assert!(!s1.avoids(&m("110/011")).unwrap());
        let f = ClassSpec::avoiding(GroundSet::Permutations, [m("001/100")]);
        assert!(f.avoids(&pm("321")).unwrap());
        let g = ClassSpec::avoiding(GroundSet::Permutations, [m("010/100")]);
        assert!(g.avoids(&pm("12")).unwrap());
        assert!(!g.avoids(&pm("132")).unwrap());
        assert_eq!(g.avoids(&m("11")), Err(Error::WrongGroundSet(GroundSet::Permutations)));
    }

    #[test]
    fn members_examples() {
        let a = perms(&["321", "231", "312"]);
        assert_eq!(a.members(3), {
            let mut v = vec![pm("123"), pm("132"), pm("213")];
            v.sort();
            v
        });
        let v = ClassSpec::avoiding(GroundSet::Polyominoes, [m("11")]);
        assert_eq!(v.members(5), vec![m("1/1/1/1")]);
        assert_eq!(perms(&[]).members(3).len(), 6);
    }

    #[test]
    fn count_sequence_examples() {
        let b = Budget::default();
        let g = perms(&["123", "132", "231"]).count_sequence(8, &b).unwrap();
        assert_eq!(g.counts(), (1..=8).collect::<Vec<u64>>());
        let fib = perms(&["123", "132", "213"]).count_sequence(6, &b).unwrap();
        assert_eq!(fib.counts(), vec![1, 2, 3, 5, 8, 13]);
        let h = ClassSpec::avoiding(GroundSet::Permutations, [m("000/001/010/100")]);
        assert_eq!(h.count_sequence(4, &b).unwrap().counts(), vec![1, 2, 6, 20]);
        assert!(matches!(
            perms(&[]).count_sequence(11, &b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn non_quasi_permutation_exclusions_warn_and_do_nothing() {
        let c = ClassSpec::avoiding(GroundSet::Permutations, [m("11"), pm("21")]);
        assert_eq!(c.warnings().len(), 1);
        let plain = perms(&["21"]);
        for r in 1..=5 {
            assert_eq!(c.members(r), plain.members(r));
        }
    }

    #[test]
    fn equal_classes_examples() {
        let q1 = ClassSpec::avoiding(GroundSet::Permutations, [m("10/00/01")]);
        let q2 = ClassSpec::avoiding(GroundSet::Permutations, [m("100/001")]);
        let a = perms(&["321", "231", "312"]);
        assert!(equal_classes(&q1, &q2, 7).unwrap().holds);
        assert!(equal_classes(&q1, &a, 7).unwrap().holds);
        let r = equal_classes(&perms(&["12"]), &perms(&["21"]), 4).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some(pm("21")));
        assert_eq!(r.to_string(), "fails at [10/01] (checked ≤ 4)");
        assert_eq!(equal_classes(&q1, &a, 3).unwrap().to_string(), "holds (verified ≤ 3)");
    }

    #[test]
    fn downward_closure() {
        let hv = ClassSpec::avoiding(GroundSet::Polyominoes, [m("101"), m("1/0/1")]);
        assert!(is_downward_closed(&hv.members_upto(8), GroundSet::Polyominoes).holds);
        // dropping a small member breaks closure
        let mut s = hv.members_upto(6);
        s.retain(|x| *x != m("11"));
        let r = is_downward_closed(&s, GroundSet::Polyominoes);
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some(m("11")));
        let av = perms(&["231"]);
        assert!(is_downward_closed(&av.members_upto(6), GroundSet::Permutations).holds);
    }

    #[test]
    fn spec_hash_is_order_independent() {
        let a = ClassSpec::avoiding(GroundSet::Permutations, [pm("12"), pm("321")]);
        let b = ClassSpec::avoiding(GroundSet::Permutations, [pm("321"), pm("12"), pm("12")]);
        assert_eq!(a.spec_hash(), b.spec_hash());
        let c = ClassSpec::avoiding(GroundSet::Polyominoes, [pm("12"), pm("321")]);
        assert_ne!(a.spec_hash(), c.spec_hash());
        assert_eq!(a.spec_hash().len(), 64);
    }
}
