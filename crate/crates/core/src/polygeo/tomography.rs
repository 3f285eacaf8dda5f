use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::BinaryMatrix;

/// Row sums (bottom row first) and column sums (left column first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Projections {
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
}

pub fn projections(m: &BinaryMatrix) -> Projections {
    Projections {
        row_sums: m.row_words().iter().map(|w| w.count_ones() as usize).collect(),
        col_sums: (0..m.cols()).map(|j| m.column(j).count_ones() as usize).collect(),
    }
}

const MAX_SIDE: usize = 5;

/// Whether `m` is the only binary matrix of its dimensions with its
/// projections. Decided by exhaustive search, so limited to 5×5.
pub fn is_unique_for_projections(m: &BinaryMatrix) -> Result<bool> {
    if m.rows() > MAX_SIDE || m.cols() > MAX_SIDE {
        return Err(Error::BudgetExceeded {
            what: "projection uniqueness dimensions",
            requested: m.rows().max(m.cols()) as u64,
            limit: MAX_SIDE as u64,
        });
    }
    let p = projections(m);
    let w = m.cols();
    let rows_by_sum: Vec<Vec<u32>> = (0..=w)
        .map(|k| (0..1u32 << w).filter(|r| r.count_ones() as usize == k).collect())
        .collect();
    let mut remaining = p.col_sums.clone();
    let mut count = 0usize;
    fill(0, &p.row_sums, &rows_by_sum, &mut remaining, &mut count);
    Ok(count == 1)
}

/// Counts reconstructions, stopping once a second one is found.
fn fill(i: usize, row_sums: &[usize], rows_by_sum: &[Vec<u32>], remaining: &mut [usize], count: &mut usize) {
    if *count > 1 {
        return;
    }
    let left = row_sums.len() - i;
    if remaining.iter().any(|&c| c > left) {
        return;
    }
    if i == row_sums.len() {
        *count += 1;
        return;
    }
    for &r in &rows_by_sum[row_sums[i]] {
        if (0..remaining.len()).any(|j| r >> j & 1 == 1 && remaining[j] == 0) {
            continue;
        }
        for (j, c) in remaining.iter_mut().enumerate() {
            *c -= (r >> j & 1) as usize;
        }
        fill(i + 1, row_sums, rows_by_sum, remaining, count);
        for (j, c) in remaining.iter_mut().enumerate() {
            *c += (r >> j & 1) as usize;
        }
    }
}
