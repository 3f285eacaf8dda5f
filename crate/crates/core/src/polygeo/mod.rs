//! Geometric predicates on polyominoes, independent of submatrix avoidance,
//! together with a few constructions and witness searches.

mod degree;
mod tomography;
mod witness;

use crate::matcore::{BinaryMatrix, Permutation};

pub use degree::{convexity_degree, pair_turns};
pub use tomography::{is_unique_for_projections, projections, Projections};
pub use witness::{find_degree_witness, find_directed_witness, NonClassWitness};

fn is_interval(w: u32) -> bool {
    if w == 0 {
        return true;
    }
    let x = w >> w.trailing_zeros();
    x & (x + 1) == 0
}

/// Every row is a single run of cells.
pub fn is_h_convex(p: &BinaryMatrix) -> bool {
    p.row_words().iter().all(|&w| is_interval(w))
}

/// Every column is a single run of cells.
pub fn is_v_convex(p: &BinaryMatrix) -> bool {
    (0..p.cols()).all(|j| is_interval(p.column(j)))
}

pub fn is_convex(p: &BinaryMatrix) -> bool {
    is_h_convex(p) && is_v_convex(p)
}

/// Cells reachable from `(i, j)` with north and east steps inside `p`.
fn north_east_reach(p: &BinaryMatrix, i: usize, j: usize) -> Vec<u32> {
    let rows = p.row_words();
    let mut reach = vec![0u32; rows.len()];
    let mut from_below = 1u32 << j;
    for r in i..rows.len() {
        let mut x = from_below & rows[r];
        // spread east along the row
        loop {
            let y = x | (x << 1) & rows[r];
            if y == x {
                break;
            }
            x = y;
        }
        reach[r] = x;
        from_below = x;
    }
    reach
}

/// Some cell reaches every cell of `p` by a path of north and east steps.
pub fn is_directed(p: &BinaryMatrix) -> bool {
    let rows = p.row_words();
    (0..p.rows()).any(|i| {
        let mut w = rows[i];
        while w != 0 {
            let j = w.trailing_zeros() as usize;
            w &= w - 1;
            if reaches_all(p, i, j) {
                return true;
            }
        }
        false
    })
}

fn reaches_all(p: &BinaryMatrix, i: usize, j: usize) -> bool {
    let reach = north_east_reach(p, i, j);
    p.row_words().iter().zip(&reach).all(|(a, b)| a == b)
}

pub fn is_directed_convex(p: &BinaryMatrix) -> bool {
    is_convex(p) && is_directed(p)
}

/// Whether the boundary of `p`, followed counterclockwise from the
/// bottom-left corner, is a path of east and north steps to the top-right
/// corner followed by a path of west and south steps back, with no vertex
/// visited twice.
pub fn is_parallelogram(p: &BinaryMatrix) -> bool {
    let (h, w) = (p.rows(), p.cols());
    let cell = |i: isize, j: isize| i >= 0 && j >= 0 && (i as usize) < h && (j as usize) < w && p.get(i as usize, j as usize);
    // outgoing boundary edge per lattice point (x = column, y = row), interior on the left
    let idx = |x: usize, y: usize| y * (w + 1) + x;
    let mut next: Vec<Option<(usize, usize, u8)>> = vec![None; (w + 1) * (h + 1)];
    let mut edges = 0usize;
    let mut add = |from: (usize, usize), to: (usize, usize), dir: u8| -> bool {
        let k = idx(from.0, from.1);
        if next[k].is_some() {
            return false;
        }
        next[k] = Some((to.0, to.1, dir));
        edges += 1;
        true
    };
    const E: u8 = 0;
    const N: u8 = 1;
    const W: u8 = 2;
    const S: u8 = 3;
    for i in 0..h {
        for j in 0..w {
            if !p.get(i, j) {
                continue;
            }
            let (ii, jj) = (i as isize, j as isize);
            let ok = (cell(ii - 1, jj) || add((j, i), (j + 1, i), E))
                && (cell(ii, jj + 1) || add((j + 1, i), (j + 1, i + 1), N))
                && (cell(ii + 1, jj) || add((j + 1, i + 1), (j, i + 1), W))
                && (cell(ii, jj - 1) || add((j, i + 1), (j, i), S));
            if !ok {
                // two boundary edges leave one point: the boundary is not simple
                return false;
            }
        }
    }
    if !p.get(0, 0) || !p.get(h - 1, w - 1) {
        return false;
    }
    let (mut x, mut y) = (0usize, 0usize);
    let mut going_back = false;
    let mut walked = 0usize;
    loop {
        let Some((nx, ny, d)) = next[idx(x, y)] else {
            return false;
        };
        if (x, y) == (w, h) {
            going_back = true;
        }
        let forward = d == E || d == N;
        if forward == going_back {
            return false;
        }
        walked += 1;
        (x, y) = (nx, ny);
        if (x, y) == (0, 0) {
            break;
        }
        if walked > edges {
            return false;
        }
    }
    // edges left untraced belong to holes
    walked == edges
}

/// Every pair of rows, and every pair of columns, is comparable under
/// inclusion of their cell sets.
pub fn rows_columns_comparable(p: &BinaryMatrix) -> bool {
    let chain = |v: &[u32]| {
        v.iter()
            .enumerate()
            .all(|(a, &x)| v[a + 1..].iter().all(|&y| x & y == x || x & y == y))
    };
    let cols: Vec<u32> = (0..p.cols()).map(|j| p.column(j)).collect();
    chain(p.row_words()) && chain(&cols)
}

const H_PRIME: [&str; 1] = ["0/1/0"];
const V_PRIME: [&str; 1] = ["010"];

/// Avoids the column `0/1/0` and the row `010`.
pub fn in_c_prime(p: &BinaryMatrix) -> bool {
    let pats: Vec<BinaryMatrix> = H_PRIME
        .iter()
        .chain(V_PRIME.iter())
        .map(|s| s.parse().expect("constant"))
        .collect();
    !pats.iter().any(|m| crate::matcore::contains(p, m))
}

/// Every maximal run of cells in a row reaches the left or right side of the
/// bounding box, and every maximal run in a column reaches its bottom or top.
pub fn boundary_contact(p: &BinaryMatrix) -> bool {
    let runs_touch = |w: u32, len: usize| {
        let mut rest = w;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            let run = rest & !rest.wrapping_add(low);
            rest &= !run;
            if run & 1 == 0 && run >> (len - 1) & 1 == 0 {
                return false;
            }
        }
        true
    };
    p.row_words().iter().all(|&w| runs_touch(w, p.cols())) && (0..p.cols()).all(|j| runs_touch(p.column(j), p.rows()))
}

/// No empty cell is cut off from the outside of the bounding box.
pub fn has_no_holes(p: &BinaryMatrix) -> bool {
    let (h, w) = (p.rows(), p.cols());
    // pad by one cell on every side and flood the empty cells from a corner
    let mut empty = vec![0u64; h + 2];
    for (i, e) in empty.iter_mut().enumerate() {
        let inner = if i == 0 || i == h + 1 { 0 } else { p.row(i - 1) as u64 };
        *e = !(inner << 1) & ((1u64 << (w + 2)) - 1);
    }
    let mut reach = vec![0u64; h + 2];
    reach[0] = empty[0];
    loop {
        let mut changed = false;
        for i in 0..h + 2 {
            let mut x = reach[i] | (reach[i] << 1 | reach[i] >> 1);
            if i > 0 {
                x |= reach[i - 1];
            }
            if i + 1 < h + 2 {
                x |= reach[i + 1];
            }
            x &= empty[i];
            if x != reach[i] {
                reach[i] = x;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reach == empty
}

/// The polyomino replacing each 1 of the permutation matrix by the block
/// `11/10` and each 0 by a full 2×2 block.
pub fn embed_permutation_in_c_prime(p: &Permutation) -> BinaryMatrix {
    let m = p.to_matrix();
    let n = m.rows();
    BinaryMatrix::from_fn(2 * n, 2 * n, |i, j| !(m.get(i / 2, j / 2) && i % 2 == 0 && j % 2 == 1))
        .expect("size fits")
}
