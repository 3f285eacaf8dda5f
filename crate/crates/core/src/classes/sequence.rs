use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genum::GroundSet;

/// Number of class members at successive ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSequence {
    ground: GroundSet,
    terms: Vec<(usize, u64)>,
}

impl CountSequence {
    /// Ranks must be strictly increasing.
    pub fn new(ground: GroundSet, terms: Vec<(usize, u64)>) -> Result<Self> {
        if terms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Parse {
                line: 0,
                msg: "ranks of a count sequence must increase".into(),
            });
        }
        Ok(CountSequence { ground, terms })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn terms(&self) -> &[(usize, u64)] {
        &self.terms
    }

    pub fn counts(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.1).collect()
    }

    /// Count at rank `r`, if computed.
    pub fn at(&self, r: usize) -> Option<u64> {
        self.terms.iter().find(|t| t.0 == r).map(|t| t.1)
    }

    /// `rank,count` lines under a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("rank,count\n");
        for (r, n) in &self.terms {
            s.push_str(&format!("{r},{n}\n"));
        }
        s
    }

    /// OEIS b-file layout: `n a(n)` per line.
    pub fn to_bfile(&self) -> String {
        self.terms.iter().map(|(r, n)| format!("{r} {n}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports() {
        let s = CountSequence::new(GroundSet::Permutations, vec![(1, 1), (2, 2), (3, 6)]).unwrap();
        assert_eq!(s.to_csv(), "rank,count\n1,1\n2,2\n3,6\n");
        assert_eq!(s.to_bfile(), "1 1\n2 2\n3 6\n");
        assert_eq!(s.at(3), Some(6));
        assert_eq!(s.at(4), None);
    }

    #[test]
    fn ranks_must_increase() {
        assert!(CountSequence::new(GroundSet::Polyominoes, vec![(3, 1), (3, 2)]).is_err());
    }
}
