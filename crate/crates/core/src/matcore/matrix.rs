use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported number of rows or columns.
pub const MAX_DIM: usize = 32;

/// A rectangular 0/1 matrix.
///
/// Rows are numbered from the bottom: row `0` is the bottom row and row
/// `rows() - 1` the top one, so that the 1 entries of a permutation matrix
/// sit where the dots of the permutation diagram are. Column `0` is the
/// leftmost column. Each row is a machine word whose bit `j` is column `j`.
///
/// Text output (see [`fmt::Display`]) writes the top row first, which is the
/// way matrices are normally drawn.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: u8,
    cols: u8,
    bits: [u32; MAX_DIM],
}

#[inline]
pub(crate) fn width_mask(cols: usize) -> u32 {
    if cols >= 32 {
        u32::MAX
    } else {
        (1u32 << cols) - 1
    }
}

/// Reads a row word left to right: the leftmost column becomes the most
/// significant bit. Ordering these keys numerically orders rows as strings.
#[inline]
pub(crate) fn row_key(row: u32, cols: usize) -> u32 {
    row.reverse_bits() >> (32 - cols)
}

/// Inverse of [`row_key`].
#[inline]
pub(crate) fn row_from_key(key: u32, cols: usize) -> u32 {
    (key << (32 - cols)).reverse_bits()
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::InvalidDimensions {
            rows,
            cols,
            max: MAX_DIM,
        });
    }
    Ok(())
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(BinaryMatrix {
            rows: rows as u8,
            cols: cols as u8,
            bits: [0; MAX_DIM],
        })
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        let full = width_mask(cols);
        for r in &mut m.bits[..rows] {
            *r = full;
        }
        Ok(m)
    }

    /// Builds a matrix from `f(row, col)`, rows counted from the bottom.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.bits[i] |= 1 << j;
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from row words listed bottom row first.
    pub fn from_row_bits(rows_bottom_up: &[u32], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows_bottom_up.len(), cols)?;
        let mask = width_mask(cols);
        for (i, &r) in rows_bottom_up.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::InvalidDimensions {
                    rows: rows_bottom_up.len(),
                    cols,
                    max: MAX_DIM,
                });
            }
            m.bits[i] = r;
        }
        Ok(m)
    }

    /// Parses rows given as `'0'/'1'` strings, top row first.
    ///
    /// ```
    /// use subpat_core::BinaryMatrix;
    /// let d = BinaryMatrix::from_top_rows(&["11", "01"]).unwrap();
    /// assert!(d.get(1, 0) && d.get(1, 1) && d.get(0, 1) && !d.get(0, 0));
    /// ```
    pub fn from_top_rows(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols)?;
        let n = rows.len();
        for (k, line) in rows.iter().enumerate() {
            if line.len() != cols {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: format!("expected {cols} columns, found {}", line.len()),
                });
            }
            for (j, ch) in line.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => m.bits[n - 1 - k] |= 1 << j,
                    other => {
                        return Err(Error::Parse {
                            line: k + 1,
                            msg: format!("unexpected character {:?}", other as char),
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows as usize
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols as usize
    }

    /// Semi-perimeter of the bounding box, `rows + cols`.
    #[inline]
    pub fn rank(&self) -> usize {
        self.rows() + self.cols()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows() && col < self.cols(), "index out of bounds");
        self.bits[row] >> col & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows() && col < self.cols(), "index out of bounds");
        if value {
            self.bits[row] |= 1 << col;
        } else {
            self.bits[row] &= !(1 << col);
        }
    }

    /// Row word `i` (bit `j` is column `j`).
    #[inline]
    pub fn row(&self, i: usize) -> u32 {
        self.bits[i]
    }

    /// All row words, bottom row first.
    #[inline]
    pub fn row_words(&self) -> &[u32] {
        &self.bits[..self.rows()]
    }

    /// Column `j` as a word whose bit `i` is row `i`.
    pub fn column(&self, j: usize) -> u32 {
        self.row_words()
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | ((r >> j & 1) << i))
    }

    pub fn count_ones(&self) -> usize {
        self.row_words().iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Union of all rows: bit `j` is set when column `j` holds a 1.
    pub fn occupied_columns(&self) -> u32 {
        self.row_words().iter().fold(0, |a, r| a | r)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols(), self.rows()).expect("dims already valid");
        for j in 0..self.cols() {
            t.bits[j] = self.column(j);
        }
        t
    }

    /// Mirror image left to right.
    pub fn flip_columns(&self) -> Self {
        let mut m = *self;
        let c = self.cols();
        for r in &mut m.bits[..self.rows()] {
            *r = r.reverse_bits() >> (32 - c);
        }
        m
    }

    /// Mirror image top to bottom.
    pub fn flip_rows(&self) -> Self {
        let mut m = *self;
        m.bits[..self.rows()].reverse();
        m
    }

    /// The submatrix on the given row and column indices (both increasing).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols.len())?;
        for (a, &i) in rows.iter().enumerate() {
            let src = self.bits[i];
            let mut w = 0;
            for (b, &j) in cols.iter().enumerate() {
                w |= (src >> j & 1) << b;
            }
            m.bits[a] = w;
        }
        Ok(m)
    }

    /// Submatrix keeping the rows and columns whose bits are set in the masks.
    pub fn select(&self, row_mask: u32, col_mask: u32) -> Option<Self> {
        let rows = row_mask.count_ones() as usize;
        let cols = col_mask.count_ones() as usize;
        if rows == 0 || cols == 0 {
            return None;
        }
        let mut m = Self::zeros(rows, cols).ok()?;
        let mut a = 0;
        for i in 0..self.rows() {
            if row_mask >> i & 1 == 1 {
                m.bits[a] = pext(self.bits[i], col_mask);
                a += 1;
            }
        }
        Some(m)
    }

    /// Deletes row `i`; `None` when nothing would remain.
    pub fn delete_row(&self, i: usize) -> Option<Self> {
        let all = width_mask(self.rows());
        self.select(all & !(1 << i), width_mask(self.cols()))
    }

    /// Deletes column `j`; `None` when nothing would remain.
    pub fn delete_col(&self, j: usize) -> Option<Self> {
        let all = width_mask(self.cols());
        self.select(width_mask(self.rows()), all & !(1 << j))
    }

    /// Every matrix obtained by deleting exactly one row or one column.
    pub fn single_deletions(&self) -> Vec<Self> {
        let mut out = Vec::with_capacity(self.rank());
        out.extend((0..self.rows()).filter_map(|i| self.delete_row(i)));
        out.extend((0..self.cols()).filter_map(|j| self.delete_col(j)));
        out
    }

    /// Inserts a row of the given word so that it ends up at index `at`.
    pub fn insert_row(&self, at: usize, word: u32) -> Result<Self> {
        let mut m = Self::zeros(self.rows() + 1, self.cols())?;
        let mut k = 0;
        for i in 0..=self.rows() {
            if i == at {
                m.bits[i] = word & width_mask(self.cols());
            } else {
                m.bits[i] = self.bits[k];
                k += 1;
            }
        }
        Ok(m)
    }

    /// Inserts a column of the given word (bit `i` = row `i`) at index `at`.
    pub fn insert_col(&self, at: usize, word: u32) -> Result<Self> {
        Ok(self.transpose().insert_row(at, word)?.transpose())
    }

    /// Edge-connected, nonempty, and touching all four sides of its box.
    pub fn is_polyomino(&self) -> bool {
        let rows = self.row_words();
        let top = rows[rows.len() - 1];
        if rows[0] == 0 || top == 0 {
            return false;
        }
        let occ = self.occupied_columns();
        if occ & 1 == 0 || occ >> (self.cols() - 1) & 1 == 0 {
            return false;
        }
        self.is_edge_connected()
    }

    /// Whether the 1-cells form one edge-connected set (false when empty).
    pub fn is_edge_connected(&self) -> bool {
        let rows = self.row_words();
        let Some(start) = rows.iter().position(|&r| r != 0) else {
            return false;
        };
        let mut reach = [0u32; MAX_DIM];
        reach[start] = rows[start] & rows[start].wrapping_neg();
        flood(rows, &mut reach[..rows.len()]);
        reach[..rows.len()] == *rows
    }

    /// At most one 1 in each row and each column.
    pub fn is_quasi_permutation(&self) -> bool {
        let mut seen = 0u32;
        for &r in self.row_words() {
            if r.count_ones() > 1 || seen & r != 0 {
                return false;
            }
            seen |= r;
        }
        true
    }

    /// Square with exactly one 1 in each row and each column.
    pub fn is_permutation_matrix(&self) -> bool {
        self.rows == self.cols
            && self.row_words().iter().all(|r| r.count_ones() == 1)
            && self.occupied_columns() == width_mask(self.cols())
    }

    /// The `'0'/'1'` text of the matrix, top row first, one line per row.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Compares the top-row-first serializations of two matrices of equal shape.
    fn cmp_bits(&self, other: &Self) -> Ordering {
        let c = self.cols();
        for i in (0..self.rows()).rev() {
            let o = row_key(self.bits[i], c).cmp(&row_key(other.bits[i], c));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

/// Gathers the bits of `x` selected by `mask` into the low bits.
#[inline]
pub(crate) fn pext(x: u32, mut mask: u32) -> u32 {
    let mut out = 0;
    let mut b = 0;
    while mask != 0 {
        let low = mask.trailing_zeros();
        out |= (x >> low & 1) << b;
        b += 1;
        mask &= mask - 1;
    }
    out
}

/// Grows `reach` to the edge-connected closure inside `cells`.
pub(crate) fn flood(cells: &[u32], reach: &mut [u32]) {
    loop {
        let mut changed = false;
        for i in 0..cells.len() {
            let mut r = reach[i];
            if i > 0 {
                r |= reach[i - 1];
            }
            if i + 1 < cells.len() {
                r |= reach[i + 1];
            }
            // horizontal spread within the row
            let mut x = r & cells[i];
            loop {
                let next = (x | x << 1 | x >> 1) & cells[i];
                if next == x {
                    break;
                }
                x = next;
            }
            if x != reach[i] {
                reach[i] = x;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Matrices order by rank, then by number of rows, then by their
/// top-row-first serialization read as a binary string.
impl Ord for BinaryMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then(self.rows.cmp(&other.rows))
            .then_with(|| self.cmp_bits(other))
    }
}

impl PartialOrd for BinaryMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.rows()).rev() {
            for j in 0..self.cols() {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = (0..self.rows())
            .rev()
            .map(|i| (0..self.cols()).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect();
        write!(f, "[{}]", lines.join("/"))
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    /// Accepts newline-separated rows (top first) or the compact
    /// `"10/01"` form used in `Debug` output.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let rows: Vec<&str> = s
            .split(['\n', '/', ';'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        Self::from_top_rows(&rows)
    }
}

/// Serialized as the list of row strings, top row first.
impl serde::Serialize for BinaryMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let lines: Vec<String> = self.to_string().lines().map(str::to_owned).collect();
        lines.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for BinaryMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lines: Vec<String> = Vec::deserialize(d)?;
        let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
        BinaryMatrix::from_top_rows(&refs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn bottom_up_convention() {
        let d = m("11/01");
        assert!(d.get(1, 0) && d.get(1, 1));
        assert!(!d.get(0, 0) && d.get(0, 1));
        assert_eq!(d.to_text(), "11\n01\n");
    }

    #[test]
    fn rejects_empty_and_oversized() {
        assert!(BinaryMatrix::zeros(0, 3).is_err());
        assert!(BinaryMatrix::zeros(3, 0).is_err());
        assert!(BinaryMatrix::zeros(33, 1).is_err());
        assert!("".parse::<BinaryMatrix>().is_err());
        assert!("10/1".parse::<BinaryMatrix>().is_err());
        assert!("12".parse::<BinaryMatrix>().is_err());
    }

    #[test]
    fn polyomino_predicate() {
        assert!(m("1").is_polyomino());
        assert!(!m("10/01").is_polyomino());
        assert!(!m("01/10").is_polyomino());
        assert!(m("01/11").is_polyomino());
        assert!(!m("0").is_polyomino());
        // box not tight
        assert!(!m("110/110/000").is_polyomino());
        assert!(!m("011/011").is_polyomino());
        assert!(m("111/101/111").is_polyomino());
    }

    #[test]
    fn quasi_permutation_predicate() {
        assert!(m("1").is_quasi_permutation());
        assert!(m("0").is_quasi_permutation());
        assert!(!m("11").is_quasi_permutation());
        assert!(!m("1/1").is_quasi_permutation());
        assert!(m("100/000/001").is_quasi_permutation());
    }

    #[test]
    fn deletions_and_selection() {
        let a = m("001/100/010");
        assert_eq!(a.delete_row(0).unwrap(), m("001/100"));
        assert_eq!(a.delete_col(1).unwrap(), m("01/10/00"));
        assert_eq!(a.single_deletions().len(), 6);
        assert!(m("1").delete_row(0).is_none());
        assert_eq!(a.select(0b101, 0b011).unwrap(), m("00/01"));
        assert_eq!(a.submatrix(&[0, 2], &[0, 1]).unwrap(), m("00/01"));
    }

    #[test]
    fn insertion_inverts_deletion() {
        let a = m("001/100/010");
        assert_eq!(a.delete_row(1).unwrap().insert_row(1, a.row(1)).unwrap(), a);
        assert_eq!(a.delete_col(2).unwrap().insert_col(2, a.column(2)).unwrap(), a);
    }

    #[test]
    fn ordering_is_rank_rows_then_text() {
        let mut v = vec![m("1"), m("0"), m("11"), m("0/0"), m("00"), m("01")];
        v.sort();
        let texts: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
        assert_eq!(texts, ["[0]", "[1]", "[00]", "[01]", "[11]", "[0/0]"]);
    }

    #[test]
    fn serde_as_row_strings() {
        let d = m("11/01");
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"["11","01"]"#);
        assert_eq!(serde_json::from_str::<BinaryMatrix>(&json).unwrap(), d);
        assert!(serde_json::from_str::<BinaryMatrix>(r#"["11","0"]"#).is_err());
    }

    #[test]
    fn flips_and_transpose() {
        let d = m("11/01");
        assert_eq!(d.flip_columns(), m("11/10"));
        assert_eq!(d.flip_rows(), m("01/11"));
        assert_eq!(d.transpose(), d);
        assert_eq!(m("10/11").transpose(), m("10/11"));
        assert_eq!(m("11/10").transpose(), m("01/11"));
        assert_eq!(m("110").transpose(), m("0/1/1"));
    }
}
