use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::genum::GroundSet;
use crate::matcore::{contains, row_from_key, width_mask, BinaryMatrix, MAX_DIM};

const NO_LABEL: u8 = u8::MAX;

/// An independent slice of one rank: the matrices of a given shape whose
/// top row is `top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shard {
    pub rows: usize,
    pub cols: usize,
    pub top: u32,
}

/// Exhaustive generator for one ground set, optionally restricted to the
/// elements avoiding a list of matrices.
///
/// Matrices are built one row at a time from the top. Since the top `k` rows
/// of a matrix form a submatrix of it, any partial matrix that already
/// contains an excluded matrix is abandoned. Polyominoes additionally track
/// the connected components reaching the last row placed; a component that
/// stops growing can never rejoin the others.
///
/// Output order within a rank is by number of rows, then by the top-row-first
/// text, which is the order of [`BinaryMatrix`]'s `Ord`. Shards partition a
/// rank and are listed in the same order, so concatenating shard outputs in
/// shard order reproduces the sequential order.
#[derive(Clone, Debug)]
pub struct Enumerator {
    ground: GroundSet,
    avoid: Vec<BinaryMatrix>,
    min_avoid_rows: usize,
}

impl Enumerator {
    pub fn new(ground: GroundSet) -> Self {
        Self::avoiding(ground, &[])
    }

    pub fn avoiding(ground: GroundSet, avoid: &[BinaryMatrix]) -> Self {
        let mut avoid = avoid.to_vec();
        avoid.sort();
        avoid.dedup();
        let min_avoid_rows = avoid.iter().map(|m| m.rows()).min().unwrap_or(usize::MAX);
        Enumerator {
            ground,
            avoid,
            min_avoid_rows,
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn avoided(&self) -> &[BinaryMatrix] {
        &self.avoid
    }

    /// `(rows, cols)` boxes holding elements of rank `r`, in output order.
    pub fn shapes(&self, r: usize) -> Vec<(usize, usize)> {
        match self.ground {
            GroundSet::Permutations if (1..=MAX_DIM).contains(&r) => vec![(r, r)],
            GroundSet::Permutations => vec![],
            _ => (1..r)
                .map(|rows| (rows, r - rows))
                .filter(|&(a, b)| a <= MAX_DIM && b <= MAX_DIM)
                .collect(),
        }
    }

    /// The shards of rank `r`, in output order.
    pub fn shards(&self, r: usize) -> Vec<Shard> {
        let mut out = Vec::new();
        for (rows, cols) in self.shapes(r) {
            for top in self.row_candidates(cols, 0, 0) {
                if self.prefix_ok(&[top], cols) {
                    out.push(Shard { rows, cols, top });
                }
            }
        }
        out
    }

    /// Visits every element of the shard in order.
    pub fn for_each_in_shard(&self, shard: &Shard, f: &mut dyn FnMut(&BinaryMatrix)) {
        let _ = self.try_for_each_in_shard(shard, &mut |m| {
            f(m);
            ControlFlow::Continue(())
        });
    }

    /// Visits the shard in order until `f` breaks. Returns whether it broke.
    pub fn try_for_each_in_shard(
        &self,
        shard: &Shard,
        f: &mut dyn FnMut(&BinaryMatrix) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut w = Walk {
            e: self,
            rows: shard.rows,
            cols: shard.cols,
            top: [0; MAX_DIM],
            labels: [[NO_LABEL; MAX_DIM]; MAX_DIM],
            used: [0; MAX_DIM + 1],
            occ: [0; MAX_DIM + 1],
            stopped: false,
            f,
        };
        w.place(0, shard.top);
        if w.stopped {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }

    /// The first element of rank `r` (in output order) satisfying `pred`.
    pub fn find_first_in_rank(
        &self,
        r: usize,
        pred: impl Fn(&BinaryMatrix) -> bool + Sync,
    ) -> Option<BinaryMatrix> {
        self.shards(r).par_iter().find_map_first(|s| {
            let mut hit = None;
            let _ = self.try_for_each_in_shard(s, &mut |m| {
                if pred(m) {
                    hit = Some(*m);
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            hit
        })
    }

    /// Visits every element of rank `r` in order.
    pub fn for_each_rank(&self, r: usize, f: &mut dyn FnMut(&BinaryMatrix)) {
        for s in self.shards(r) {
            self.for_each_in_shard(&s, f);
        }
    }

    pub fn collect_rank(&self, r: usize) -> Vec<BinaryMatrix> {
        let mut v = Vec::new();
        self.for_each_rank(r, &mut |m| v.push(*m));
        v
    }

    /// Elements of rank `r` passing `keep`, shards processed in parallel and
    /// merged in order.
    pub fn par_collect_rank(
        &self,
        r: usize,
        keep: impl Fn(&BinaryMatrix) -> bool + Sync,
    ) -> Vec<BinaryMatrix> {
        let parts: Vec<Vec<BinaryMatrix>> = self
            .shards(r)
            .par_iter()
            .map(|s| {
                let mut v = Vec::new();
                self.for_each_in_shard(s, &mut |m| {
                    if keep(m) {
                        v.push(*m)
                    }
                });
                v
            })
            .collect();
        parts.concat()
    }

    /// Number of elements of rank `r` passing `keep`, without storing them.
    pub fn par_count_rank(&self, r: usize, keep: impl Fn(&BinaryMatrix) -> bool + Sync) -> u64 {
        self.shards(r)
            .par_iter()
            .map(|s| {
                let mut n = 0u64;
                self.for_each_in_shard(s, &mut |m| {
                    if keep(m) {
                        n += 1
                    }
                });
                n
            })
            .sum()
    }

    /// Candidate row words for a row of width `cols`, in text order.
    /// `used` holds the columns already carrying a 1 (permutation-like sets)
    /// and `prev` the row above (polyominoes).
    fn row_candidates(&self, cols: usize, used: u32, prev: u32) -> Vec<u32> {
        let free = width_mask(cols) & !used;
        match self.ground {
            GroundSet::Permutations => (0..cols).rev().map(|j| 1 << j).filter(|b| free & b != 0).collect(),
            GroundSet::QuasiPermutationMatrices => std::iter::once(0)
                .chain((0..cols).rev().map(|j| 1 << j).filter(|b| free & b != 0))
                .collect(),
            GroundSet::BinaryMatrices => (0..1u32 << cols).map(|k| row_from_key(k, cols)).collect(),
            GroundSet::Polyominoes => (1..1u32 << cols)
                .map(|k| row_from_key(k, cols))
                .filter(|&w| prev == 0 || w & prev != 0)
                .collect(),
        }
    }

    /// Whether the partial matrix given by its top rows avoids every
    /// excluded matrix.
    fn prefix_ok(&self, top_rows: &[u32], cols: usize) -> bool {
        let k = top_rows.len();
        if k < self.min_avoid_rows {
            return true;
        }
        let mut bottom_up = [0u32; MAX_DIM];
        for (i, &w) in top_rows.iter().rev().enumerate() {
            bottom_up[i] = w;
        }
        let m = BinaryMatrix::from_row_bits(&bottom_up[..k], cols).expect("row words fit the width");
        !self
            .avoid
            .iter()
            .any(|p| p.rows() <= k && p.cols() <= cols && contains(&m, p))
    }
}

struct Walk<'e, 'f> {
    e: &'e Enumerator,
    rows: usize,
    cols: usize,
    /// Rows placed so far, top row first.
    top: [u32; MAX_DIM],
    /// Component label of each cell of row `d`, for polyominoes.
    labels: [[u8; MAX_DIM]; MAX_DIM],
    /// Union of rows `0..d`.
    used: [u32; MAX_DIM + 1],
    occ: [u32; MAX_DIM + 1],
    stopped: bool,
    f: &'f mut dyn FnMut(&BinaryMatrix) -> ControlFlow<()>,
}

impl Walk<'_, '_> {
    /// Places `word` as row `d` (counted from the top) and recurses.
    fn place(&mut self, d: usize, word: u32) {
        self.top[d] = word;
        if d > 0 && !self.e.prefix_ok(&self.top[..=d], self.cols) {
            return;
        }
        self.used[d + 1] = self.used[d] | word;
        self.occ[d + 1] = self.occ[d] | word;
        let mut components = 0;
        if self.e.ground == GroundSet::Polyominoes {
            match self.relabel(d, word) {
                Some(c) => components = c,
                None => return,
            }
        }
        if d + 1 == self.rows {
            if self.e.ground == GroundSet::Polyominoes
                && (components != 1 || self.occ[d + 1] & 1 == 0 || self.occ[d + 1] >> (self.cols - 1) & 1 == 0)
            {
                return;
            }
            let mut bottom_up = [0u32; MAX_DIM];
            for i in 0..self.rows {
                bottom_up[i] = self.top[self.rows - 1 - i];
            }
            let m = BinaryMatrix::from_row_bits(&bottom_up[..self.rows], self.cols).expect("valid shape");
            self.stopped = (self.f)(&m).is_break();
            return;
        }
        let prev = if self.e.ground == GroundSet::Polyominoes { word } else { 0 };
        for w in self.e.row_candidates(self.cols, self.used[d + 1], prev) {
            self.place(d + 1, w);
            if self.stopped {
                return;
            }
        }
    }

    /// Computes component labels for row `d` from those of row `d - 1`.
    /// Returns the number of components touching row `d`, or `None` when a
    /// component of row `d - 1` fails to continue into row `d`.
    fn relabel(&mut self, d: usize, word: u32) -> Option<usize> {
        let mut runs = [0u32; MAX_DIM];
        let mut nruns = 0;
        let mut rest = word;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            // run = maximal block of ones starting at `low`
            let run = rest & !(rest.wrapping_add(low));
            runs[nruns] = run;
            nruns += 1;
            rest &= !run;
        }
        // union-find over previous labels (0..MAX_DIM) and new runs (MAX_DIM..)
        let mut parent = [0u8; 2 * MAX_DIM];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(parent: &mut [u8], mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        let mut prev_labels = 0u64;
        let mut touched = 0u64;
        if d > 0 {
            let prev = self.top[d - 1];
            for j in 0..self.cols {
                if prev >> j & 1 == 1 {
                    prev_labels |= 1 << self.labels[d - 1][j];
                }
            }
            for (k, &run) in runs[..nruns].iter().enumerate() {
                let mut over = run & prev;
                while over != 0 {
                    let j = over.trailing_zeros() as usize;
                    over &= over - 1;
                    let l = self.labels[d - 1][j] as usize;
                    touched |= 1 << l;
                    let a = find(&mut parent, l);
                    let b = find(&mut parent, MAX_DIM + k);
                    parent[a] = b as u8;
                }
            }
            if touched != prev_labels {
                return None;
            }
        }
        let mut remap = [NO_LABEL; 2 * MAX_DIM];
        let mut next = 0u8;
        let row_labels = &mut self.labels[d];
        *row_labels = [NO_LABEL; MAX_DIM];
        for (k, &run) in runs[..nruns].iter().enumerate() {
            let root = find(&mut parent, MAX_DIM + k);
            if remap[root] == NO_LABEL {
                remap[root] = next;
                next += 1;
            }
            let mut bits = run;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                row_labels[j] = remap[root];
            }
        }
        Some(next as usize)
    }
}
