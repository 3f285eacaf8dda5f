use std::collections::VecDeque;

use crate::matcore::BinaryMatrix;
use crate::polygeo::is_convex;

/// Fewest changes of direction on a monotone path of cells of `p` from
/// `a` to `b` (cells given as `(row, col)`), or `None` if there is no
/// monotone path.
///
/// A 0-1 breadth-first search over (cell, axis of the last step): a step
/// along the current axis is free, a step across it costs one turn.
pub fn pair_turns(p: &BinaryMatrix, a: (usize, usize), b: (usize, usize)) -> Option<usize> {
    if !p.get(a.0, a.1) || !p.get(b.0, b.1) {
        return None;
    }
    let di = (b.0 as isize - a.0 as isize).signum();
    let dj = (b.1 as isize - a.1 as isize).signum();
    let (h, w) = (p.rows(), p.cols());
    let id = |i: usize, j: usize, axis: usize| (i * w + j) * 2 + axis;
    let mut dist = vec![usize::MAX; h * w * 2];
    let mut q = VecDeque::new();
    for axis in 0..2 {
        dist[id(a.0, a.1, axis)] = 0;
        q.push_back((a.0, a.1, axis));
    }
    while let Some((i, j, axis)) = q.pop_front() {
        let d = dist[id(i, j, axis)];
        if (i, j) == b {
            return Some(d);
        }
        // axis 0: horizontal steps, axis 1: vertical steps
        let moves = [(0usize, 0isize, dj), (1, di, 0)];
        for (next_axis, si, sj) in moves {
            if si == 0 && sj == 0 {
                continue;
            }
            let (ni, nj) = (i as isize + si, j as isize + sj);
            if ni < 0 || nj < 0 || ni as usize >= h || nj as usize >= w {
                continue;
            }
            let (ni, nj) = (ni as usize, nj as usize);
            if !p.get(ni, nj) {
                continue;
            }
            let cost = d + usize::from(next_axis != axis);
            let k = id(ni, nj, next_axis);
            if cost < dist[k] {
                dist[k] = cost;
                if next_axis == axis {
                    q.push_front((ni, nj, next_axis));
                } else {
                    q.push_back((ni, nj, next_axis));
                }
            }
        }
    }
    None
}

/// The least `k` such that every two cells of `p` are joined by a monotone
/// path with at most `k` changes of direction. `None` when `p` is not
/// convex.
pub fn convexity_degree(p: &BinaryMatrix) -> Option<usize> {
    if !is_convex(p) {
        return None;
    }
    let cells: Vec<(usize, usize)> = (0..p.rows())
        .flat_map(|i| (0..p.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| p.get(i, j))
        .collect();
    let mut worst = 0;
    for (x, &a) in cells.iter().enumerate() {
        for &b in &cells[x + 1..] {
            // convex polyominoes always have monotone paths
            worst = worst.max(pair_turns(p, a, b)?);
        }
    }
    Some(worst)
}
