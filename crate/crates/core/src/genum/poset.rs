use crate::matcore::{contains, BinaryMatrix};

/// The elements of `s` that contain no other element of `s`, sorted and
/// without duplicates.
pub fn minimal_elements(s: &[BinaryMatrix]) -> Vec<BinaryMatrix> {
    let mut sorted = s.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<BinaryMatrix> = Vec::new();
    // In rank order, anything containing an earlier element contains an
    // earlier minimal one.
    for m in sorted {
        if !out.iter().any(|k| k.rank() < m.rank() && contains(&m, k)) {
            out.push(m);
        }
    }
    out
}

/// Whether no element of `s` contains another one.
pub fn is_antichain(s: &[BinaryMatrix]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, a)| s.iter().enumerate().all(|(j, b)| i == j || !contains(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::Permutation;

    fn m(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    fn pm(s: &str) -> BinaryMatrix {
        s.parse::<Permutation>().unwrap().to_matrix()
    }

    #[test]
    fn minimal_examples() {
        assert_eq!(minimal_elements(&[pm("12"), pm("123")]), vec![pm("12")]);
        assert_eq!(minimal_elements(&[m("00"), m("0"), m("0/0")]), vec![m("0")]);
        let anti = vec![m("10/00/01"), m("100/001")];
        let mut sorted = anti.clone();
        sorted.sort();
        assert_eq!(minimal_elements(&anti), sorted);
    }

    #[test]
    fn antichain_examples() {
        assert!(is_antichain(&[m("10/00/01"), m("100/001")]));
        assert!(!is_antichain(&[m("0"), m("00")]));
        let w: Vec<BinaryMatrix> = ["111", "00", "101", "110", "011"].iter().map(|s| m(s)).collect();
        assert!(is_antichain(&w));
        // duplicates are comparable
        assert!(!is_antichain(&[m("1"), m("1")]));
    }
}
