use serde::{Deserialize, Serialize};

use crate::bases::SEARCH_RANK_LIMIT;
use crate::error::{Error, Result};
use crate::genum::{Enumerator, GroundSet};
use crate::matcore::{contains, BinaryMatrix};
use crate::polygeo::{convexity_degree, is_directed};

/// A polyomino `host` with a property and a polyomino submatrix `sub`
/// lacking it, showing the property does not define a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonClassWitness {
    pub host: BinaryMatrix,
    pub sub: BinaryMatrix,
}

fn check_rank(rmax: usize) -> Result<()> {
    if rmax > SEARCH_RANK_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "witness search rank",
            requested: rmax as u64,
            limit: SEARCH_RANK_LIMIT as u64,
        });
    }
    Ok(())
}

/// Proper submatrices of `p` that are polyominoes, in mask order.
fn proper_polyomino_submatrices(p: &BinaryMatrix) -> impl Iterator<Item = BinaryMatrix> + '_ {
    let fr = (1u32 << p.rows()) - 1;
    let fc = (1u32 << p.cols()) - 1;
    (1..=fr).flat_map(move |rm| {
        (1..=fc).filter_map(move |cm| {
            if rm == fr && cm == fc {
                return None;
            }
            p.select(rm, cm).filter(BinaryMatrix::is_polyomino)
        })
    })
}

/// The first directed polyomino, in rank then enumeration order, with a
/// polyomino submatrix that is not directed.
pub fn find_directed_witness(rmax: usize) -> Result<Option<NonClassWitness>> {
    check_rank(rmax)?;
    let e = Enumerator::new(GroundSet::Polyominoes);
    let bad_sub = |p: &BinaryMatrix| proper_polyomino_submatrices(p).find(|s| !is_directed(s));
    for r in 2..=rmax {
        if let Some(host) = e.find_first_in_rank(r, |p| is_directed(p) && bad_sub(p).is_some()) {
            let sub = bad_sub(&host).expect("found above");
            return Ok(Some(NonClassWitness { host, sub }));
        }
    }
    Ok(None)
}

/// The first polyomino of convexity degree 2, in rank then enumeration
/// order, with a polyomino submatrix of degree 3.
///
/// Submatrices of convex polyominoes are convex, so hosts are drawn from the
/// convex ones and screened against the degree-3 polyominoes of lower rank.
pub fn find_degree_witness(rmax: usize) -> Result<Option<NonClassWitness>> {
    check_rank(rmax)?;
    let convex = Enumerator::avoiding(
        GroundSet::Polyominoes,
        &["101".parse().expect("constant"), "1/0/1".parse().expect("constant")],
    );
    let mut degree3: Vec<BinaryMatrix> = Vec::new();
    for r in 2..=rmax {
        if !degree3.is_empty() {
            let host = convex.find_first_in_rank(r, |p| {
                degree3.iter().any(|s| contains(p, s)) && convexity_degree(p) == Some(2)
            });
            if let Some(host) = host {
                let sub = proper_polyomino_submatrices(&host)
                    .find(|s| convexity_degree(s) == Some(3))
                    .expect("contains a degree-3 polyomino");
                return Ok(Some(NonClassWitness { host, sub }));
            }
        }
        degree3.extend(convex.par_collect_rank(r, |p| convexity_degree(p) == Some(3)));
    }
    Ok(None)
}
