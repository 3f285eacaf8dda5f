use crate::matcore::matrix::{width_mask, BinaryMatrix, MAX_DIM};

/// Row and column indices of the host selected by an occurrence of a pattern.
///
/// Indices are 0-based and use the host's bottom-up row numbering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Embedding {
    /// Re-checks the occurrence cell by cell.
    pub fn validate(&self, host: &BinaryMatrix, pattern: &BinaryMatrix) -> bool {
        let increasing = |v: &[usize], bound: usize| {
            v.windows(2).all(|w| w[0] < w[1]) && v.last().is_none_or(|&x| x < bound)
        };
        if self.rows.len() != pattern.rows()
            || self.cols.len() != pattern.cols()
            || !increasing(&self.rows, host.rows())
            || !increasing(&self.cols, host.cols())
        {
            return false;
        }
        self.rows.iter().enumerate().all(|(a, &i)| {
            self.cols
                .iter()
                .enumerate()
                .all(|(b, &j)| host.get(i, j) == pattern.get(a, b))
        })
    }
}

/// Whether `pattern` is a submatrix of `host`, i.e. `pattern ≼ host`.
pub fn contains(host: &BinaryMatrix, pattern: &BinaryMatrix) -> bool {
    Search::new(host, pattern).is_some_and(|mut s| s.run(0, 0))
}

/// A witness for [`contains`], if any.
pub fn find_embedding(host: &BinaryMatrix, pattern: &BinaryMatrix) -> Option<Embedding> {
    let mut s = Search::new(host, pattern)?;
    if !s.run(0, 0) {
        return None;
    }
    let mut cols: Vec<usize> = s.chosen[..s.pc].iter().map(|&c| c as usize).collect();
    let mut rows = s.greedy_rows();
    if s.transposed {
        std::mem::swap(&mut rows, &mut cols);
    }
    Some(Embedding { rows, cols })
}

/// Whether `host` contains at least one member of `patterns`.
pub fn contains_any<'a>(host: &BinaryMatrix, patterns: impl IntoIterator<Item = &'a BinaryMatrix>) -> bool {
    patterns.into_iter().any(|p| contains(host, p))
}

fn binom(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Does the bit sequence `small` (length `len_s`) occur as a subsequence of
/// `big` (length `len_b`)?
fn is_subsequence(small: u32, len_s: usize, big: u32, len_b: usize) -> bool {
    let mut k = 0;
    for i in 0..len_b {
        if k == len_s {
            break;
        }
        if big >> i & 1 == small >> k & 1 {
            k += 1;
        }
    }
    k == len_s
}

/// Backtracking over column choices. Each host row keeps the word formed by
/// the columns chosen so far; a partial choice survives when the pattern's
/// rows, restricted to the same prefix of columns, can be matched greedily
/// to host rows in increasing order.
struct Search {
    host: [u32; MAX_DIM],
    pat: [u32; MAX_DIM],
    hr: usize,
    hc: usize,
    pr: usize,
    pc: usize,
    transposed: bool,
    /// `compat[j]`: host columns whose entries contain pattern column `j`
    /// as a subsequence.
    compat: [u32; MAX_DIM],
    proj: [u32; MAX_DIM],
    chosen: [u8; MAX_DIM],
}

impl Search {
    fn new(host: &BinaryMatrix, pattern: &BinaryMatrix) -> Option<Self> {
        if pattern.rows() > host.rows() || pattern.cols() > host.cols() {
            return None;
        }
        // Branch over the dimension with fewer candidate selections.
        let by_cols = binom(host.cols(), pattern.cols()) <= binom(host.rows(), pattern.rows());
        let (h, p) = if by_cols {
            (*host, *pattern)
        } else {
            (host.transpose(), pattern.transpose())
        };
        let mut s = Search {
            host: [0; MAX_DIM],
            pat: [0; MAX_DIM],
            hr: h.rows(),
            hc: h.cols(),
            pr: p.rows(),
            pc: p.cols(),
            transposed: !by_cols,
            compat: [0; MAX_DIM],
            proj: [0; MAX_DIM],
            chosen: [0; MAX_DIM],
        };
        s.host[..s.hr].copy_from_slice(h.row_words());
        s.pat[..s.pr].copy_from_slice(p.row_words());
        for j in 0..s.pc {
            let pcol = p.column(j);
            for c in 0..s.hc {
                if is_subsequence(pcol, s.pr, h.column(c), s.hr) {
                    s.compat[j] |= 1 << c;
                }
            }
            if s.compat[j] == 0 {
                return None;
            }
        }
        Some(s)
    }

    /// Greedy row matching for the first `depth` chosen columns.
    #[inline]
    fn rows_fit(&self, depth: usize) -> bool {
        let mask = width_mask(depth);
        let mut k = 0;
        for i in 0..self.hr {
            if k == self.pr {
                return true;
            }
            // Not enough host rows left for the remaining pattern rows.
            if self.hr - i < self.pr - k {
                return false;
            }
            if self.proj[i] == self.pat[k] & mask {
                k += 1;
            }
        }
        k == self.pr
    }

    fn greedy_rows(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.pr);
        for i in 0..self.hr {
            if out.len() < self.pr && self.proj[i] == self.pat[out.len()] {
                out.push(i);
            }
        }
        out
    }

    fn run(&mut self, depth: usize, from: usize) -> bool {
        if depth == self.pc {
            return true;
        }
        let last = self.hc - (self.pc - depth);
        let mut cand = self.compat[depth] & !width_mask(from) & width_mask(last + 1);
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            for i in 0..self.hr {
                self.proj[i] |= (self.host[i] >> c & 1) << depth;
            }
            self.chosen[depth] = c as u8;
            if self.rows_fit(depth + 1) && self.run(depth + 1, c + 1) {
                return true;
            }
            let clear = !(1u32 << depth);
            for i in 0..self.hr {
                self.proj[i] &= clear;
            }
        }
        false
    }
}
