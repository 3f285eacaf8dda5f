use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bases::{check_search_budget, p_basis};
use crate::classes::ClassSpec;
use crate::error::{Error, Result};
use crate::genum::GroundSet;
use crate::matcore::{contains, BinaryMatrix};

/// Whether the polyomino `p` contains `m` while none of its proper
/// polyomino submatrices does, i.e. `p` is in the p-basis of `Av_poly(m)`.
pub fn is_minimal_containing(p: &BinaryMatrix, m: &BinaryMatrix) -> bool {
    if !p.is_polyomino() || !contains(p, m) {
        return false;
    }
    // single deletions reject most candidates cheaply
    if p.single_deletions().iter().any(|s| s.is_polyomino() && contains(s, m)) {
        return false;
    }
    let fr = (1u32 << p.rows()) - 1;
    let fc = (1u32 << p.cols()) - 1;
    for rm in 1..=fr {
        if (rm.count_ones() as usize) < m.rows() {
            continue;
        }
        // column subsets can only lose occurrences
        let r = p.select(rm, fc).expect("nonempty selection");
        if !contains(&r, m) {
            continue;
        }
        let all_rows = (1u32 << r.rows()) - 1;
        for cm in 1..=fc {
            if (rm == fr && cm == fc) || (cm.count_ones() as usize) < m.cols() {
                continue;
            }
            let s = r.select(all_rows, cm).expect("nonempty selection");
            if s.is_polyomino() && contains(&s, m) {
                return false;
            }
        }
    }
    true
}

const GRID: usize = 64;

/// Depth-first walk over induced paths of cells: each new cell touches its
/// predecessor and no other cell already placed.
struct PathWalk<'a> {
    pattern: &'a BinaryMatrix,
    min_rank: usize,
    max_rank: usize,
    grid: [u64; GRID],
    path: Vec<(usize, usize)>,
    lo: (usize, usize),
    hi: (usize, usize),
    found: BTreeMap<usize, Vec<BinaryMatrix>>,
}

impl PathWalk<'_> {
    fn occupied(&self, (i, j): (usize, usize)) -> bool {
        self.grid[i] >> j & 1 == 1
    }

    fn visit(&mut self) {
        let rows = self.hi.0 - self.lo.0 + 1;
        let cols = self.hi.1 - self.lo.1 + 1;
        if rows + cols <= self.min_rank || rows < self.pattern.rows() || cols < self.pattern.cols() {
            return;
        }
        // each path is reached from both of its ends; keep one
        let (s, e) = (self.path[0], self.path[self.path.len() - 1]);
        if e <= s {
            return;
        }
        let words: Vec<u32> = (self.lo.0..=self.hi.0)
            .map(|i| (self.grid[i] >> self.lo.1) as u32 & ((1u64 << cols) - 1) as u32)
            .collect();
        let p = BinaryMatrix::from_row_bits(&words, cols).expect("bounded by max rank");
        if contains(&p, self.pattern) && is_minimal_containing(&p, self.pattern) {
            self.found.entry(rows + cols).or_default().push(p);
        }
    }

    fn extend(&mut self) {
        self.visit();
        let (i, j) = self.path[self.path.len() - 1];
        let steps = [(i + 1, j), (i, j + 1), (i - 1, j), (i, j - 1)];
        for n in steps {
            if self.occupied(n) {
                continue;
            }
            let around = [(n.0 + 1, n.1), (n.0, n.1 + 1), (n.0 - 1, n.1), (n.0, n.1 - 1)];
            if around.iter().any(|&a| a != (i, j) && self.occupied(a)) {
                continue;
            }
            let lo = (self.lo.0.min(n.0), self.lo.1.min(n.1));
            let hi = (self.hi.0.max(n.0), self.hi.1.max(n.1));
            if (hi.0 - lo.0 + 1) + (hi.1 - lo.1 + 1) > self.max_rank {
                continue;
            }
            let saved = (self.lo, self.hi);
            (self.lo, self.hi) = (lo, hi);
            self.grid[n.0] |= 1 << n.1;
            self.path.push(n);
            self.extend();
            self.path.pop();
            self.grid[n.0] &= !(1 << n.1);
            (self.lo, self.hi) = saved;
        }
    }
}

/// Polyominoes in the p-basis of `Av_poly(pattern)` whose cells form an
/// induced path, grouped by rank, for ranks in `min_rank + 1 ..= max_rank`.
///
/// This is a family of witnesses, not the whole p-basis at those ranks.
pub fn path_witnesses(
    pattern: &BinaryMatrix,
    min_rank: usize,
    max_rank: usize,
) -> Result<BTreeMap<usize, Vec<BinaryMatrix>>> {
    if max_rank > 30 {
        return Err(Error::BudgetExceeded {
            what: "path witness rank",
            requested: max_rank as u64,
            limit: 30,
        });
    }
    let start = (GRID / 2, GRID / 2);
    let mut w = PathWalk {
        pattern,
        min_rank,
        max_rank,
        grid: [0; GRID],
        path: vec![start],
        lo: start,
        hi: start,
        found: BTreeMap::new(),
    };
    w.grid[start.0] |= 1 << start.1;
    w.extend();
    for v in w.found.values_mut() {
        v.sort();
    }
    Ok(w.found)
}

/// One bound of a growth report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub rank_bound: usize,
    /// p-basis elements of rank at most `rank_bound` found.
    pub count: usize,
    /// Whether `count` is the full number rather than a lower bound.
    pub exact: bool,
}

/// p-basis sizes of `Av_poly(pattern)` at increasing rank bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub pattern: BinaryMatrix,
    pub exact_upto: usize,
    pub rows: Vec<GrowthRow>,
    /// The counts (exact or lower bounds) strictly increase. Since lower
    /// bounds only come from elements above the previous bound, this proves
    /// the true counts strictly increase too.
    pub strictly_increasing: bool,
}

/// Counts the p-basis of `Av_poly(pattern)` exhaustively up to
/// `exact_upto`, and beyond it adds the induced-path witnesses.
pub fn p_basis_growth(pattern: &BinaryMatrix, exact_upto: usize, bounds: &[usize]) -> Result<GrowthReport> {
    check_search_budget(GroundSet::Polyominoes, exact_upto, "p_basis growth exact rank")?;
    let c = ClassSpec::avoiding(GroundSet::Polyominoes, [*pattern]);
    let pb = p_basis(&c, exact_upto)?;
    let exact_at = |r: usize| {
        pb.members
            .members()
            .iter()
            .filter(|m| m.rank() <= r)
            .count()
    };
    let top = bounds.iter().copied().max().unwrap_or(0);
    let extra = if top > exact_upto {
        path_witnesses(pattern, exact_upto, top)?
    } else {
        BTreeMap::new()
    };
    let rows: Vec<GrowthRow> = bounds
        .iter()
        .map(|&b| {
            if b <= exact_upto {
                GrowthRow {
                    rank_bound: b,
                    count: exact_at(b),
                    exact: true,
                }
            } else {
                let more: usize = extra.range(..=b).map(|(_, v)| v.len()).sum();
                GrowthRow {
                    rank_bound: b,
                    count: exact_at(exact_upto) + more,
                    exact: false,
                }
            }
        })
        .collect();
    let strictly_increasing = rows.windows(2).all(|w| w[0].rank_bound < w[1].rank_bound && w[0].count < w[1].count);
    Ok(GrowthReport {
        pattern: *pattern,
        exact_upto,
        rows,
        strictly_increasing,
    })
}
