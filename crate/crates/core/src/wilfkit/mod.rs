//! Permutation classes defined by one permutation matrix with an extra empty
//! row or column, and the Wilf-equivalences they inherit.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{Budget, ClassCache, ClassSpec, CountSequence};
use crate::error::Result;
use crate::genum::GroundSet;
use crate::matcore::{BinaryMatrix, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BorderSide {
    Top,
    Bottom,
    Left,
    Right,
}

impl BorderSide {
    pub const ALL: [BorderSide; 4] = [BorderSide::Top, BorderSide::Bottom, BorderSide::Left, BorderSide::Right];
}

impl fmt::Display for BorderSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BorderSide::Top => "top",
            BorderSide::Bottom => "bottom",
            BorderSide::Left => "left",
            BorderSide::Right => "right",
        };
        f.write_str(s)
    }
}

/// The matrix of `tau` with an all-zero row or column added on `side`.
pub fn border(tau: &Permutation, side: BorderSide) -> BinaryMatrix {
    let m = tau.to_matrix();
    let r = match side {
        BorderSide::Top => m.insert_row(m.rows(), 0),
        BorderSide::Bottom => m.insert_row(0, 0),
        BorderSide::Left => m.insert_col(0, 0),
        BorderSide::Right => m.insert_col(m.cols(), 0),
    };
    r.expect("permutation sizes leave room for one line")
}

/// Removes the largest (`Top`), smallest (`Bottom`), first (`Left`) or last
/// (`Right`) entry of `sigma` and standardizes the rest.
///
/// `sigma` contains `border(tau, side)` exactly when the result contains
/// `tau`. Panics on the empty permutation.
pub fn decompose_extreme(sigma: &Permutation, side: BorderSide) -> Permutation {
    let v = sigma.values();
    let n = v.len();
    assert!(n >= 1, "cannot remove an entry of the empty permutation");
    let drop = match side {
        BorderSide::Top => v.iter().position(|&x| x == n),
        BorderSide::Bottom => v.iter().position(|&x| x == 1),
        BorderSide::Left => Some(0),
        BorderSide::Right => Some(n - 1),
    }
    .expect("every value occurs");
    let removed = v[drop];
    let rest: Vec<usize> = v
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .map(|(_, &x)| if x > removed { x - 1 } else { x })
        .collect();
    Permutation::new(rest).expect("standardized")
}

fn counts(spec: &ClassSpec, nmax: usize, cache: Option<&ClassCache>) -> Result<CountSequence> {
    let budget = Budget::default();
    match cache {
        Some(c) => spec.count_sequence_cached(nmax, &budget, c),
        None => spec.count_sequence(nmax, &budget),
    }
}

fn perm_class(taus: &[Permutation]) -> ClassSpec {
    ClassSpec::avoiding(GroundSet::Permutations, taus.iter().map(Permutation::to_matrix))
}

fn bordered_class(taus: &[Permutation], side: BorderSide) -> ClassSpec {
    ClassSpec::avoiding(GroundSet::Permutations, taus.iter().map(|t| border(t, side)))
}

/// Counts of a bordered class against `n` times the counts of the class
/// it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderedCount {
    pub side: BorderSide,
    /// Sizes of the bordered class for `n` in `1..=nmax`.
    pub bordered: CountSequence,
    /// `n * |Av(taus)|_(n-1)` for `n` in `1..=nmax`.
    pub expected: Vec<u64>,
    pub holds: bool,
}

/// Counts `Av(border(τ, side) : τ in taus)` up to size `nmax` and checks
/// that size `n` has `n * |Av(taus)|_(n-1)` elements for `2 <= n <= nmax`.
pub fn check_bordered_count(
    taus: &[Permutation],
    side: BorderSide,
    nmax: usize,
    cache: Option<&ClassCache>,
) -> Result<BorderedCount> {
    let bordered = counts(&bordered_class(taus, side), nmax, cache)?;
    let base = if nmax >= 2 {
        counts(&perm_class(taus), nmax - 1, cache)?
    } else {
        CountSequence::new(GroundSet::Permutations, vec![])?
    };
    // the empty permutation is the only one of size 0 and avoids any nonempty tau
    let below = |n: usize| if n == 0 { 1 } else { base.at(n).unwrap_or(0) };
    let expected: Vec<u64> = (1..=nmax).map(|n| n as u64 * below(n - 1)).collect();
    let holds = (2..=nmax).all(|n| bordered.at(n) == Some(expected[n - 1]));
    Ok(BorderedCount {
        side,
        bordered,
        expected,
        holds,
    })
}

/// One bordered class in a Wilf report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderedSequence {
    /// 1 or 2, the basis the class is built from.
    pub basis: u8,
    pub side: BorderSide,
    pub counts: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfReport {
    pub nmax: usize,
    /// `Av(b1)` and `Av(b2)` agree up to `nmax - 1`.
    pub bases_agree: bool,
    /// The eight bordered classes, basis-major in side order.
    pub sequences: Vec<BorderedSequence>,
    pub all_agree: bool,
}

/// Computes the eight classes `Av(border(τ, s) : τ in b)` for both bases and
/// all four sides, up to size `nmax`, and reports whether they agree.
pub fn check_wilf_equivalence(
    b1: &[Permutation],
    b2: &[Permutation],
    nmax: usize,
    cache: Option<&ClassCache>,
) -> Result<WilfReport> {
    let jobs: Vec<(u8, &[Permutation], BorderSide)> = [(1u8, b1), (2, b2)]
        .into_iter()
        .flat_map(|(k, b)| BorderSide::ALL.into_iter().map(move |s| (k, b, s)))
        .collect();
    let sequences = jobs
        .par_iter()
        .map(|&(basis, b, side)| {
            let c = counts(&bordered_class(b, side), nmax, cache)?;
            Ok(BorderedSequence {
                basis,
                side,
                counts: c.counts(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_agree = sequences.windows(2).all(|w| w[0].counts == w[1].counts);
    let bases_agree = if nmax >= 2 {
        counts(&perm_class(b1), nmax - 1, cache)?.counts() == counts(&perm_class(b2), nmax - 1, cache)?.counts()
    } else {
        true
    };
    Ok(WilfReport {
        nmax,
        bases_agree,
        sequences,
        all_agree,
    })
}
