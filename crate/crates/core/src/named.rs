//! Matrices and classes that recur in the verification suites, by name.
//! Text is top row first.

use crate::classes::ClassSpec;
use crate::genum::GroundSet;
use crate::matcore::BinaryMatrix;

pub const Q1: &str = "10/00/01";
pub const Q2: &str = "100/001";
pub const M_F: &str = "001/100";
pub const M_G: &str = "010/100";
pub const M_H: &str = "000/001/010/100";
pub const M_J: &str = "000/010/001/100";
pub const M_K: &str = "000/001/100/010";
/// A row with a gap.
pub const H: &str = "101";
/// A column with a gap.
pub const V: &str = "1/0/1";
pub const D: &str = "11/01";
pub const S1: &str = "10/01";
pub const S2: &str = "01/10";
pub const H_PRIME: &str = "0/1/0";
pub const V_PRIME: &str = "010";
pub const M_INF: &str = "1001/1101";
/// A matrix every proper submatrix of which fits in a convex polyomino,
/// while it does not.
pub const CONVEX_EXTRA: &str = "001/100/010";

const TABLE: [(&str, &str); 17] = [
    ("q1", Q1),
    ("q2", Q2),
    ("mf", M_F),
    ("mg", M_G),
    ("mh", M_H),
    ("mj", M_J),
    ("mk", M_K),
    ("h", H),
    ("v", V),
    ("d", D),
    ("s1", S1),
    ("s2", S2),
    ("h-prime", H_PRIME),
    ("v-prime", V_PRIME),
    ("minf", M_INF),
    ("convex-extra", CONVEX_EXTRA),
    ("zero", "0"),
];

pub fn matrix(text: &str) -> BinaryMatrix {
    text.parse().expect("named matrices are valid")
}

pub fn matrices(texts: &[&str]) -> Vec<BinaryMatrix> {
    texts.iter().map(|t| matrix(t)).collect()
}

/// Looks up a named matrix, case-insensitively.
pub fn lookup(name: &str) -> Option<BinaryMatrix> {
    let key = name.to_ascii_lowercase();
    TABLE.iter().find(|(n, _)| *n == key).map(|(_, t)| matrix(t))
}

pub fn names() -> impl Iterator<Item = &'static str> {
    TABLE.iter().map(|(n, _)| *n)
}

/// Every permutation matrix of size 3, in lexicographic order.
fn size_three() -> Vec<BinaryMatrix> {
    crate::matcore::Permutation::all(3).iter().map(|p| p.to_matrix()).collect()
}

/// Permutations avoiding every pattern of size 3: nothing above size 2.
pub fn class_t() -> ClassSpec {
    ClassSpec::avoiding(GroundSet::Permutations, size_three())
}

/// Permutations avoiding 321, 231 and 312.
pub fn class_a() -> ClassSpec {
    ClassSpec::avoiding(GroundSet::Permutations, matrices(&["100/010/001", "010/100/001", "100/001/010"]))
}

/// Polyominoes with no two cells in a row: vertical bars.
pub fn class_v() -> ClassSpec {
    ClassSpec::avoiding(GroundSet::Polyominoes, matrices(&["11", "10", "01", "00"]))
}

/// Polyominoes of width at most two.
pub fn class_w() -> ClassSpec {
    let rows = (0u32..8).map(|w| BinaryMatrix::from_row_bits(&[w], 3).expect("1x3"));
    ClassSpec::avoiding(GroundSet::Polyominoes, rows)
}

/// Rectangles, as the polyominoes avoiding the four L-trominoes.
pub fn class_r() -> ClassSpec {
    ClassSpec::avoiding(GroundSet::Polyominoes, matrices(&["10/11", "01/11", "11/10", "11/01"]))
}
