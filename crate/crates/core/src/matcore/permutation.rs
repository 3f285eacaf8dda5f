use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::matrix::{BinaryMatrix, MAX_DIM};

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidPermutation(format!("size {n} out of range 1..={MAX_DIM}")));
        }
        let mut seen = 0u64;
        for &v in &values {
            if v == 0 || v > n || seen >> v & 1 == 1 {
                return Err(Error::InvalidPermutation(format!("{values:?} is not a permutation of 1..{n}")));
            }
            seen |= 1 << v;
        }
        Ok(Permutation(values.into_iter().map(|v| v as u8).collect()))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// One-line notation, values in `1..=n`.
    pub fn values(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    /// The permutation matrix: entry `(σ(j), j)` is 1 (1-based, rows from the bottom).
    pub fn to_matrix(&self) -> BinaryMatrix {
        let n = self.size();
        let mut rows = [0u32; MAX_DIM];
        for (j, &v) in self.0.iter().enumerate() {
            rows[v as usize - 1] |= 1 << j;
        }
        BinaryMatrix::from_row_bits(&rows[..n], n).expect("size checked at construction")
    }

    pub fn from_matrix(m: &BinaryMatrix) -> Result<Self> {
        if !m.is_permutation_matrix() {
            return Err(Error::NotAPermutationMatrix);
        }
        let n = m.cols();
        let mut values = vec![0usize; n];
        for (i, &r) in m.row_words().iter().enumerate() {
            values[r.trailing_zeros() as usize] = i + 1;
        }
        Self::new(values)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.size()];
        for (j, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = j as u8 + 1;
        }
        Permutation(inv)
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.size() as u8;
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    /// All permutations of size `n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

/// Standard in-place lexicographic successor.
fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Space-separated one-line notation, e.g. `5 2 1 6 3 4`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() < 10 {
            let s: String = self.0.iter().map(|v| char::from(b'0' + v)).collect();
            f.write_str(&s)
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"5 2 1 6 3 4"`, `"5,2,1,6,3,4"` or, below size 10, `"521634"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains([' ', ',', '\t']) {
            s.split([' ', ',', '\t'])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::InvalidPermutation(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("unexpected character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(values)
    }
}
