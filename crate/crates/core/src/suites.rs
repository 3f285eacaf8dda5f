//! Named, versioned verification suites with deterministic reports.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bases::{class_plus_membership, minimal_perms_containing, p_basis_growth, p_basis_is_minimal_m_basis, proper_submatrices};
use crate::classes::{equal_classes, Budget, ClassSpec};
use crate::error::{Error, Result};
use crate::genum::{Enumerator, GroundSet};
use crate::matcore::{contains, BinaryMatrix, Permutation};
use crate::named::{self, matrices, matrix};
use crate::polygeo;
use crate::wilfkit::check_wilf_equivalence;

/// Bumped whenever a suite's checks or report layout change.
pub const SUITE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Convex,
    DirectedConvex,
    Parallelogram,
    Lconvex,
    Ryser,
    Lpolyomino,
    Cprime,
    InfiniteBasis,
    PermF,
    PermG,
    PermHjk,
    Wilf,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Convex,
        Suite::DirectedConvex,
        Suite::Parallelogram,
        Suite::Lconvex,
        Suite::Ryser,
        Suite::Lpolyomino,
        Suite::Cprime,
        Suite::InfiniteBasis,
        Suite::PermF,
        Suite::PermG,
        Suite::PermHjk,
        Suite::Wilf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Convex => "convex",
            Suite::DirectedConvex => "directed-convex",
            Suite::Parallelogram => "parallelogram",
            Suite::Lconvex => "lconvex",
            Suite::Ryser => "ryser",
            Suite::Lpolyomino => "lpolyomino",
            Suite::Cprime => "cprime",
            Suite::InfiniteBasis => "infinite-basis",
            Suite::PermF => "perm-f",
            Suite::PermG => "perm-g",
            Suite::PermHjk => "perm-hjk",
            Suite::Wilf => "wilf",
        }
    }

    /// The bound used when none is given: a rank for polyomino suites, a
    /// size for permutation suites, a side length for `ryser`.
    pub fn default_bound(self) -> usize {
        match self {
            Suite::Convex
            | Suite::DirectedConvex
            | Suite::Parallelogram
            | Suite::Lconvex
            | Suite::Lpolyomino
            | Suite::Cprime => 9,
            Suite::Ryser => 4,
            Suite::InfiniteBasis => 14,
            Suite::PermF | Suite::PermG => 8,
            Suite::PermHjk | Suite::Wilf => 7,
        }
    }

    fn max_bound(self) -> usize {
        match self {
            Suite::Ryser => 5,
            Suite::InfiniteBasis => 20,
            Suite::PermF | Suite::PermG | Suite::PermHjk | Suite::Wilf => Budget::default().permutations,
            _ => 12,
        }
    }

    /// Hex SHA-256 of the suite name and version, identifying what a report
    /// was produced by.
    pub fn spec_hash(self) -> String {
        let id = format!("suite {} v{}", self.name(), SUITE_VERSION);
        hex::encode(Sha256::digest(id.as_bytes()))
    }

    /// Whether the bound counts permutation sizes.
    pub fn bound_is_size(self) -> bool {
        matches!(self, Suite::PermF | Suite::PermG | Suite::PermHjk | Suite::Wilf)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unknown suite {s:?}"),
        })
    }
}

/// One checked statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub bound: usize,
    /// Objects examined.
    pub checked: u64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub version: u32,
    pub bound: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} v{} bound {}\n", self.suite, self.version, self.bound);
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            let _ = writeln!(s, "  {verdict} {} (bound {}, checked {})", c.name, c.bound, c.checked);
            if !c.detail.is_empty() {
                for line in c.detail.lines() {
                    let _ = writeln!(s, "    {line}");
                }
            }
        }
        let _ = writeln!(s, "result {}", if self.pass { "pass" } else { "FAIL" });
        s
    }
}

/// Runs `suite` with the given bound, or its default.
pub fn run_suite(suite: Suite, bound: Option<usize>) -> Result<SuiteReport> {
    let bound = bound.unwrap_or_else(|| suite.default_bound());
    if bound > suite.max_bound() {
        return Err(Error::BudgetExceeded {
            what: "suite bound",
            requested: bound as u64,
            limit: suite.max_bound() as u64,
        });
    }
    let checks = match suite {
        Suite::Convex => convex(bound)?,
        Suite::DirectedConvex => directed_convex(bound)?,
        Suite::Parallelogram => parallelogram(bound)?,
        Suite::Lconvex => lconvex(bound)?,
        Suite::Ryser => ryser(bound)?,
        Suite::Lpolyomino => lpolyomino(bound)?,
        Suite::Cprime => cprime(bound)?,
        Suite::InfiniteBasis => infinite_basis(bound)?,
        Suite::PermF => perm_f(bound)?,
        Suite::PermG => perm_g(bound)?,
        Suite::PermHjk => perm_hjk(bound)?,
        Suite::Wilf => wilf(bound)?,
    };
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite,
        version: SUITE_VERSION,
        bound,
        checks,
        pass,
    })
}

/// Compares a predicate with avoidance of `pats` on every polyomino of rank
/// at most `rmax`.
fn poly_equivalence(
    name: &str,
    rmax: usize,
    pats: &[&str],
    pred: impl Fn(&BinaryMatrix) -> bool + Sync,
) -> Check {
    let pats = matrices(pats);
    let e = Enumerator::new(GroundSet::Polyominoes);
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in 2..=rmax {
        checked += e.par_count_rank(r, |_| true);
        bad.extend(e.par_collect_rank(r, |p| pred(p) == pats.iter().any(|m| contains(p, m))));
    }
    let detail = match bad.first() {
        Some(p) => format!("{} discrepancies, first {p:?}", bad.len()),
        None => String::new(),
    };
    Check {
        name: name.to_string(),
        bound: rmax,
        checked,
        pass: bad.is_empty(),
        detail,
    }
}

fn convex(rmax: usize) -> Result<Vec<Check>> {
    let mut out = vec![poly_equivalence("convex iff avoids H, V", rmax, &[named::H, named::V], polygeo::is_convex)];
    let c = ClassSpec::avoiding(GroundSet::Polyominoes, matrices(&[named::H, named::V]));
    let a = matrix(named::CONVEX_EXTRA);
    let budget = rmax.max(12);
    let top = class_plus_membership(&c, &a, budget)?;
    let subs = proper_submatrices(&a);
    let mut subs_in = true;
    for s in &subs {
        subs_in &= class_plus_membership(&c, s, budget)?.member;
    }
    out.push(Check {
        name: format!("{} is in no convex polyomino, its proper submatrices are", named::CONVEX_EXTRA),
        bound: budget,
        checked: subs.len() as u64 + 1,
        pass: !top.member && subs_in,
        detail: String::new(),
    });
    Ok(out)
}

fn directed_convex(rmax: usize) -> Result<Vec<Check>> {
    let mut out = vec![poly_equivalence(
        "directed-convex iff avoids H, V, D",
        rmax,
        &[named::H, named::V, named::D],
        polygeo::is_directed_convex,
    )];
    let wbound = rmax.max(9);
    let w = polygeo::find_directed_witness(wbound)?;
    let (pass, detail) = match &w {
        Some(w) => (
            polygeo::is_directed(&w.host) && !polygeo::is_directed(&w.sub) && w.sub.is_polyomino() && contains(&w.host, &w.sub),
            format!("directed {:?} contains non-directed {:?}", w.host, w.sub),
        ),
        None => (false, "no witness".to_string()),
    };
    out.push(Check {
        name: "directed polyominoes are not a class".to_string(),
        bound: wbound,
        checked: 1,
        pass,
        detail,
    });
    Ok(out)
}

fn parallelogram(rmax: usize) -> Result<Vec<Check>> {
    let pair = ["10/11", "11/01"];
    let mut out = vec![poly_equivalence("parallelogram iff avoids 10/11, 11/01", rmax, &pair, polygeo::is_parallelogram)];
    let c = ClassSpec::avoiding(GroundSet::Polyominoes, matrices(&pair));
    let r = rmax.min(8);
    let pm = p_basis_is_minimal_m_basis(&c, r)?;
    out.push(Check {
        name: "p-basis is the unique minimal m-basis".to_string(),
        bound: r,
        checked: 1,
        pass: pm.holds,
        detail: String::new(),
    });
    Ok(out)
}

fn lconvex(rmax: usize) -> Result<Vec<Check>> {
    let mut out = vec![poly_equivalence(
        "convexity degree <= 1 iff avoids H, V, S1, S2",
        rmax,
        &[named::H, named::V, named::S1, named::S2],
        |p| matches!(polygeo::convexity_degree(p), Some(0 | 1)),
    )];
    let bound = rmax.max(12);
    let w = polygeo::find_degree_witness(bound)?;
    let (pass, detail) = match &w {
        Some(w) => (
            polygeo::convexity_degree(&w.host) == Some(2)
                && polygeo::convexity_degree(&w.sub) == Some(3)
                && contains(&w.host, &w.sub),
            format!("degree 2 {:?} contains degree 3 {:?}", w.host, w.sub),
        ),
        None => (false, "no witness".to_string()),
    };
    out.push(Check {
        name: "2-convex polyominoes are not a class".to_string(),
        bound,
        checked: 1,
        pass,
        detail,
    });
    Ok(out)
}

fn ryser(side: usize) -> Result<Vec<Check>> {
    let switches = matrices(&[named::S1, named::S2]);
    let mut checked = 0u64;
    let mut bad: Option<BinaryMatrix> = None;
    for rows in 1..=side {
        for cols in 1..=side {
            for bits in 0u64..1 << (rows * cols) {
                let m = BinaryMatrix::from_fn(rows, cols, |i, j| bits >> (i * cols + j) & 1 == 1)?;
                checked += 1;
                let unique = polygeo::is_unique_for_projections(&m)?;
                if unique == switches.iter().any(|s| contains(&m, s)) && bad.is_none() {
                    bad = Some(m);
                }
            }
        }
    }
    Ok(vec![Check {
        name: "unique for projections iff avoids S1, S2".to_string(),
        bound: side,
        checked,
        pass: bad.is_none(),
        detail: bad.map(|m| format!("first discrepancy {m:?}")).unwrap_or_default(),
    }])
}

fn lpolyomino(rmax: usize) -> Result<Vec<Check>> {
    let mut out = vec![poly_equivalence(
        "rows and columns comparable iff avoids S1, S2",
        rmax,
        &[named::S1, named::S2],
        polygeo::rows_columns_comparable,
    )];
    // projection uniqueness is decided only within 5x5
    let e = Enumerator::avoiding(GroundSet::Polyominoes, &matrices(&[named::H, named::V, named::S1, named::S2]));
    let r = rmax.min(8);
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 2..=r {
        let ls = e.par_collect_rank(k, |p| p.rows() <= 5 && p.cols() <= 5);
        checked += ls.len() as u64;
        for p in ls {
            if !polygeo::is_unique_for_projections(&p)? {
                bad.push(p);
            }
        }
    }
    out.push(Check {
        name: "L-convex polyominoes within 5x5 are determined by projections".to_string(),
        bound: r,
        checked,
        pass: bad.is_empty(),
        detail: bad.first().map(|m| format!("first failure {m:?}")).unwrap_or_default(),
    });
    Ok(out)
}

fn cprime(rmax: usize) -> Result<Vec<Check>> {
    let mut out = vec![poly_equivalence(
        "boundary contact iff avoids 0/1/0, 010",
        rmax,
        &[named::H_PRIME, named::V_PRIME],
        polygeo::boundary_contact,
    )];
    let mut images = std::collections::BTreeSet::new();
    let mut checked = 0u64;
    let mut ok = true;
    for n in 1..=4 {
        for p in Permutation::all(n) {
            let e = polygeo::embed_permutation_in_c_prime(&p);
            checked += 1;
            ok &= e.is_polyomino() && polygeo::in_c_prime(&e) && e.rows() == 2 * n && images.insert(e);
        }
    }
    out.push(Check {
        name: "permutation embedding is injective into C'".to_string(),
        bound: 4,
        checked,
        pass: ok,
        detail: String::new(),
    });
    Ok(out)
}

fn infinite_basis(rmax: usize) -> Result<Vec<Check>> {
    let exact = rmax.min(10);
    let mut bounds: Vec<usize> = (exact..=rmax).step_by(2).collect();
    if bounds.last() != Some(&rmax) {
        bounds.push(rmax);
    }
    let g = p_basis_growth(&matrix(named::M_INF), exact, &bounds)?;
    let detail = g
        .rows
        .iter()
        .map(|r| format!("rank <= {}: {} {}", r.rank_bound, if r.exact { "exactly" } else { "at least" }, r.count))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(vec![Check {
        name: format!("p-basis of Av({}) grows strictly", named::M_INF),
        bound: rmax,
        checked: g.rows.len() as u64,
        pass: g.strictly_increasing && g.rows.len() >= 2,
        detail,
    }])
}

fn perm_class(texts: &[&str]) -> ClassSpec {
    ClassSpec::avoiding(GroundSet::Permutations, matrices(texts))
}

fn perms(words: &[&str]) -> Vec<BinaryMatrix> {
    let mut v: Vec<BinaryMatrix> = words
        .iter()
        .map(|w| {
            Permutation::new(w.bytes().map(|b| (b - b'0') as usize).collect())
                .expect("valid")
                .to_matrix()
        })
        .collect();
    v.sort();
    v
}

fn covers(m: &str, words: &[&str]) -> Result<Check> {
    let got: Vec<BinaryMatrix> = minimal_perms_containing(&matrix(m))?.iter().map(|p| p.to_matrix()).collect();
    let mut got_sorted = got.clone();
    got_sorted.sort();
    Ok(Check {
        name: format!("minimal permutations containing {m} are {}", words.join(", ")),
        bound: matrix(m).rank() - matrix(m).count_ones(),
        checked: got.len() as u64,
        pass: got_sorted == perms(words),
        detail: String::new(),
    })
}

fn counts(c: &ClassSpec, nmax: usize) -> Result<Vec<u64>> {
    Ok(c.count_sequence(nmax, &Budget::default())?.counts())
}

fn sequence_check(name: String, nmax: usize, got: &[u64], want: impl Fn(usize) -> u64, from: usize) -> Check {
    let pass = (from..=nmax).all(|n| got.get(n - 1) == Some(&want(n)));
    let shown: Vec<String> = got.iter().map(u64::to_string).collect();
    Check {
        name,
        bound: nmax,
        checked: got.len() as u64,
        pass,
        detail: format!("counts {}", shown.join(",")),
    }
}

fn perm_f(nmax: usize) -> Result<Vec<Check>> {
    let f = perm_class(&[named::M_F]);
    let triple = ClassSpec::avoiding(GroundSet::Permutations, perms(&["123", "132", "213"]));
    let eq = equal_classes(&f, &triple, nmax)?;
    let c = counts(&f, nmax)?;
    let fib_ok = (3..=nmax).all(|n| c[n - 1] == c[n - 2] + c[n - 3]);
    Ok(vec![
        covers(named::M_F, &["123", "132", "213"])?,
        Check {
            name: format!("Av({}) = Av(123, 132, 213)", named::M_F),
            bound: nmax,
            checked: nmax as u64,
            pass: eq.holds,
            detail: eq.counterexample.map(|m| format!("differs at {m:?}")).unwrap_or_default(),
        },
        Check {
            name: "counts satisfy a(n) = a(n-1) + a(n-2)".to_string(),
            bound: nmax,
            checked: c.len() as u64,
            pass: fib_ok,
            detail: format!("counts {}", c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
        },
    ])
}

fn perm_g(nmax: usize) -> Result<Vec<Check>> {
    let g = perm_class(&[named::M_G]);
    let triple = ClassSpec::avoiding(GroundSet::Permutations, perms(&["123", "132", "231"]));
    let eq = equal_classes(&g, &triple, nmax)?;
    let c = counts(&triple, nmax)?;
    Ok(vec![
        covers(named::M_G, &["123", "132", "231"])?,
        Check {
            name: format!("Av({}) = Av(123, 132, 231)", named::M_G),
            bound: nmax,
            checked: nmax as u64,
            pass: eq.holds,
            detail: eq.counterexample.map(|m| format!("differs at {m:?}")).unwrap_or_default(),
        },
        sequence_check("|Av(123, 132, 231)| = n".to_string(), nmax, &c, |n| n as u64, 1),
    ])
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn perm_hjk(nmax: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (label, m) in [("M_H", named::M_H), ("M_J", named::M_J), ("M_K", named::M_K)] {
        let c = counts(&perm_class(&[m]), nmax)?;
        out.push(sequence_check(
            format!("|Av({label})| = C(2n-2, n-1)"),
            nmax,
            &c,
            |n| binomial(2 * n as u64 - 2, n as u64 - 1),
            2,
        ));
    }
    Ok(out)
}

fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

fn wilf(nmax: usize) -> Result<Vec<Check>> {
    let b1 = [Permutation::new(vec![1, 2, 3])?];
    let b2 = [Permutation::new(vec![1, 3, 2])?];
    let r = check_wilf_equivalence(&b1, &b2, nmax, None)?;
    let want: Vec<u64> = (1..=nmax as u64).map(|n| n * catalan(n - 1)).collect();
    let each = r.sequences.iter().all(|s| s.counts == want);
    let detail = r
        .sequences
        .iter()
        .map(|s| {
            let c: Vec<String> = s.counts.iter().map(u64::to_string).collect();
            format!("basis {} {}: {}", s.basis, s.side, c.join(","))
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(vec![
        Check {
            name: "Av(123) and Av(132) agree".to_string(),
            bound: nmax.saturating_sub(1),
            checked: 2,
            pass: r.bases_agree,
            detail: String::new(),
        },
        Check {
            name: "eight bordered classes agree, each n * Cat(n-1)".to_string(),
            bound: nmax,
            checked: r.sequences.len() as u64,
            pass: r.all_agree && each,
            detail,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass_and_repeat() {
        for (s, b) in [
            (Suite::Convex, 6),
            (Suite::DirectedConvex, 6),
            (Suite::Parallelogram, 6),
            (Suite::Lconvex, 6),
            (Suite::Ryser, 3),
            (Suite::Lpolyomino, 6),
            (Suite::Cprime, 6),
            (Suite::PermF, 6),
            (Suite::PermG, 6),
            (Suite::PermHjk, 6),
            (Suite::Wilf, 5),
            (Suite::InfiniteBasis, 12),
        ] {
            let a = run_suite(s, Some(b)).unwrap();
            assert!(a.pass, "{}", a.to_text());
            let again = run_suite(s, Some(b)).unwrap();
            assert_eq!(a.to_text(), again.to_text());
        }
    }

    #[test]
    fn oversized_bounds_are_refused() {
        assert!(matches!(run_suite(Suite::Ryser, Some(6)), Err(Error::BudgetExceeded { .. })));
    }
}
