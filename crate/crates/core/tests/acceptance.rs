//! Runs each acceptance criterion in turn and prints one line per criterion.
//! Expected values either come from brute-force oracles defined here or are
//! stated constants checked by those oracles.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use subpat_core::bases::{canonical_m_basis, minimal_m_bases, minimal_perms_containing, p_basis};
use subpat_core::genum::Enumerator;
use subpat_core::named::{self, matrices, matrix};
use subpat_core::polygeo;
use subpat_core::suites::{run_suite, Suite};
use subpat_core::wilfkit::check_wilf_equivalence;
use subpat_core::{contains, BinaryMatrix, ClassSpec, GroundSet, Permutation};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn perm_matrices(words: &[&str]) -> Vec<BinaryMatrix> {
    let mut v: Vec<BinaryMatrix> = words.iter().map(|w| perm(w).to_matrix()).collect();
    v.sort();
    v
}

/// Classical pattern containment on one-line notation, by trying every
/// subsequence.
fn brute_perm_contains(sigma: &[usize], tau: &[usize]) -> bool {
    let k = tau.len();
    let n = sigma.len();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return false;
    }
    loop {
        let ok = (0..k).all(|a| (0..k).all(|b| (sigma[idx[a]] < sigma[idx[b]]) == (tau[a] < tau[b])));
        if ok {
            return true;
        }
        // next k-subset of 0..n in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Submatrix containment by trying every choice of rows and columns.
fn brute_contains(host: &BinaryMatrix, pat: &BinaryMatrix) -> bool {
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    };
    let rs = subsets(host.rows(), pat.rows());
    let cs = subsets(host.cols(), pat.cols());
    rs.iter().any(|r| {
        cs.iter().any(|c| {
            (0..pat.rows()).all(|i| (0..pat.cols()).all(|j| host.get(r[i], c[j]) == pat.get(i, j)))
        })
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

fn criterion_1() -> Verdict {
    let taus = [vec![1, 2, 3], vec![1, 3, 2], vec![2, 3, 1]];
    let c = ClassSpec::avoiding(GroundSet::Permutations, perm_matrices(&["123", "132", "231"]));
    let counts = c.count_sequence(8, &Default::default()).map_err(|e| e.to_string())?.counts();
    for n in 1..=8 {
        let brute = Permutation::all(n)
            .iter()
            .filter(|s| taus.iter().all(|t| !brute_perm_contains(&s.values(), t)))
            .count() as u64;
        ensure(counts[n - 1] == n as u64 && brute == n as u64, || format!("size {n}: class {} brute {brute}", counts[n - 1]))?;
    }
    Ok(format!("counts {counts:?}"))
}

fn criterion_2() -> Verdict {
    let mut notes = Vec::new();
    for (label, text) in [("M_H", named::M_H), ("M_J", named::M_J), ("M_K", named::M_K)] {
        let m = matrix(text);
        let c = ClassSpec::avoiding(GroundSet::Permutations, [m]);
        let counts = c.count_sequence(7, &Default::default()).map_err(|e| e.to_string())?.counts();
        for n in 2..=7 {
            let want = binomial(2 * n as u64 - 2, n as u64 - 1);
            ensure(counts[n - 1] == want, || format!("{label} size {n}: {} != {want}", counts[n - 1]))?;
            // independent count at the smaller sizes
            if n <= 6 {
                let brute = Permutation::all(n).iter().filter(|s| !brute_contains(&s.to_matrix(), &m)).count() as u64;
                ensure(brute == want, || format!("{label} size {n}: brute {brute} != {want}"))?;
            }
        }
        notes.push(format!("{label} {counts:?}"));
    }
    Ok(notes.join("; "))
}

fn criterion_3() -> Verdict {
    let mf = matrix(named::M_F);
    let taus = [vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3]];
    let f = ClassSpec::avoiding(GroundSet::Permutations, [mf]);
    let mut counts = Vec::new();
    for n in 1..=8 {
        let members: BTreeSet<BinaryMatrix> = f.members(n).into_iter().collect();
        let want: BTreeSet<BinaryMatrix> = Permutation::all(n)
            .iter()
            .filter(|s| taus.iter().all(|t| !brute_perm_contains(&s.values(), t)))
            .map(Permutation::to_matrix)
            .collect();
        ensure(members == want, || format!("sets differ at size {n}"))?;
        if n <= 7 {
            let brute: BTreeSet<BinaryMatrix> = Permutation::all(n)
                .iter()
                .map(Permutation::to_matrix)
                .filter(|s| !brute_contains(s, &mf))
                .collect();
            ensure(brute == want, || format!("direct avoidance differs at size {n}"))?;
        }
        counts.push(members.len() as u64);
    }
    for n in 3..=8 {
        ensure(counts[n - 1] == counts[n - 2] + counts[n - 3], || format!("recurrence fails at {n}: {counts:?}"))?;
    }
    Ok(format!("counts {counts:?}"))
}

fn sorted_set(texts: &[&str]) -> Vec<BinaryMatrix> {
    let mut v = matrices(texts);
    v.sort();
    v
}

fn criterion_4() -> Verdict {
    let cases: Vec<(&str, ClassSpec, Vec<BinaryMatrix>, Vec<Vec<BinaryMatrix>>)> = vec![
        ("T", named::class_t(), sorted_set(&["00", "0/0"]), vec![sorted_set(&["00"]), sorted_set(&["0/0"])]),
        (
            "A",
            named::class_a(),
            sorted_set(&[named::Q1, named::Q2]),
            vec![sorted_set(&[named::Q1]), sorted_set(&[named::Q2])],
        ),
        ("V", named::class_v(), sorted_set(&["0", "11"]), vec![sorted_set(&["11"])]),
        ("R", named::class_r(), sorted_set(&["0"]), vec![sorted_set(&["0"])]),
        (
            "W",
            named::class_w(),
            sorted_set(&["111", "00", "101", "110", "011"]),
            vec![sorted_set(&["111", "110"]), sorted_set(&["111", "011"])],
        ),
    ];
    let mut notes = Vec::new();
    for (label, c, canon_want, minimal_want) in cases {
        let (dmax, budget) = if c.ground() == GroundSet::Permutations { (8, 8) } else { (7, 11) };
        let k = canonical_m_basis(&c, dmax, budget).map_err(|e| e.to_string())?;
        ensure(k.members.members() == canon_want.as_slice(), || {
            format!("{label} canonical {:?}", k.members.members())
        })?;
        let mut got: Vec<Vec<BinaryMatrix>> = minimal_m_bases(&c, &k, 9)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|b| b.members.members().to_vec())
            .collect();
        got.sort();
        let mut want = minimal_want;
        want.sort();
        ensure(got == want, || format!("{label} minimal {got:?}"))?;
        notes.push(format!("{label}: {} canonical, {} minimal", canon_want.len(), want.len()));
    }
    Ok(notes.join("; "))
}

fn criterion_5() -> Verdict {
    let c = ClassSpec::avoiding(GroundSet::Permutations, matrices(&[named::Q1, named::Q2]));
    let pb = p_basis(&c, 8).map_err(|e| e.to_string())?;
    ensure(pb.members.members() == perm_matrices(&["321", "231", "312"]).as_slice(), || {
        format!("p-basis {:?}", pb.members.members())
    })?;
    for (text, words) in [(named::M_F, ["123", "132", "213"]), (named::M_G, ["123", "132", "231"])] {
        let m = matrix(text);
        let mut got: Vec<BinaryMatrix> = minimal_perms_containing(&m)
            .map_err(|e| e.to_string())?
            .iter()
            .map(Permutation::to_matrix)
            .collect();
        got.sort();
        ensure(got == perm_matrices(&words), || format!("minimal perms of {text}: {got:?}"))?;
        // every size-3 permutation containing m, by brute force
        let brute: Vec<BinaryMatrix> = Permutation::all(3)
            .iter()
            .map(Permutation::to_matrix)
            .filter(|p| brute_contains(p, &m))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        ensure(brute == perm_matrices(&words), || format!("brute covers of {text}: {brute:?}"))?;
    }
    Ok("p-basis {321, 231, 312}; covers of M_F and M_G exact".into())
}

/// Cells reachable from `s` by north and east steps.
fn ne_reach(p: &BinaryMatrix, s: (usize, usize)) -> usize {
    let mut seen = BTreeSet::from([s]);
    let mut q = VecDeque::from([s]);
    while let Some((i, j)) = q.pop_front() {
        for n in [(i + 1, j), (i, j + 1)] {
            if n.0 < p.rows() && n.1 < p.cols() && p.get(n.0, n.1) && seen.insert(n) {
                q.push_back(n);
            }
        }
    }
    seen.len()
}

fn brute_directed(p: &BinaryMatrix) -> bool {
    let cells: Vec<(usize, usize)> = (0..p.rows())
        .flat_map(|i| (0..p.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| p.get(i, j))
        .collect();
    cells.iter().any(|&s| ne_reach(p, s) == cells.len())
}

/// Fewest direction changes over every monotone path from `a` to `b`.
fn brute_turns(p: &BinaryMatrix, a: (usize, usize), b: (usize, usize)) -> Option<usize> {
    let di = (b.0 as isize - a.0 as isize).signum();
    let dj = (b.1 as isize - a.1 as isize).signum();
    let mut best: Option<usize> = None;
    let mut stack = vec![(a.0 as isize, a.1 as isize, 2u8, 0usize)];
    while let Some((i, j, last, turns)) = stack.pop() {
        if (i as usize, j as usize) == b {
            best = Some(best.map_or(turns, |x| x.min(turns)));
            continue;
        }
        for (axis, (si, sj)) in [(0u8, (0, dj)), (1u8, (di, 0))] {
            if (si, sj) == (0, 0) {
                continue;
            }
            let (ni, nj) = (i + si, j + sj);
            if ni < 0 || nj < 0 || ni as usize >= p.rows() || nj as usize >= p.cols() || !p.get(ni as usize, nj as usize) {
                continue;
            }
            let t = turns + usize::from(last != 2 && last != axis);
            stack.push((ni, nj, axis, t));
        }
    }
    best
}

fn brute_degree(p: &BinaryMatrix) -> Option<usize> {
    let cells: Vec<(usize, usize)> = (0..p.rows())
        .flat_map(|i| (0..p.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| p.get(i, j))
        .collect();
    let mut worst = 0;
    for &a in &cells {
        for &b in &cells {
            worst = worst.max(brute_turns(p, a, b)?);
        }
    }
    Some(worst)
}

fn criterion_6() -> Verdict {
    type Pred = fn(&BinaryMatrix) -> bool;
    let props: Vec<(&str, Vec<BinaryMatrix>, Pred)> = vec![
        ("convex", matrices(&[named::H, named::V]), polygeo::is_convex),
        ("directed-convex", matrices(&[named::H, named::V, named::D]), polygeo::is_directed_convex),
        ("parallelogram", matrices(&["10/11", "11/01"]), polygeo::is_parallelogram),
        ("L-convex", matrices(&[named::H, named::V, named::S1, named::S2]), |p| {
            matches!(polygeo::convexity_degree(p), Some(0 | 1))
        }),
        ("comparable", matrices(&[named::S1, named::S2]), polygeo::rows_columns_comparable),
        ("contact", matrices(&[named::H_PRIME, named::V_PRIME]), polygeo::boundary_contact),
    ];
    let e = Enumerator::new(GroundSet::Polyominoes);
    let mut total = 0u64;
    let mut failures = Vec::new();
    for r in 2..=9 {
        total += e.par_count_rank(r, |_| true);
        for (name, pats, pred) in &props {
            let bad = e.par_count_rank(r, |p| pred(p) == pats.iter().any(|m| contains(p, m)));
            if bad > 0 {
                failures.push(format!("{name} rank {r}: {bad}"));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join(", "))?;
    Ok(format!("{total} polyominoes, 6 properties, 0 discrepancies"))
}

fn all_matrices(rows: usize, cols: usize) -> impl Iterator<Item = BinaryMatrix> {
    (0u64..1 << (rows * cols)).map(move |b| BinaryMatrix::from_fn(rows, cols, |i, j| b >> (i * cols + j) & 1 == 1).unwrap())
}

fn criterion_7() -> Verdict {
    let switches = matrices(&[named::S1, named::S2]);
    let mut checked = 0;
    for rows in 1..=4 {
        for cols in 1..=4 {
            // independent uniqueness: group the whole shape by projections
            let mut groups: HashMap<(Vec<u32>, Vec<u32>), usize> = HashMap::new();
            let key = |m: &BinaryMatrix| {
                let r: Vec<u32> = (0..m.rows()).map(|i| m.row(i).count_ones()).collect();
                let c: Vec<u32> = (0..m.cols()).map(|j| m.column(j).count_ones()).collect();
                (r, c)
            };
            for m in all_matrices(rows, cols) {
                *groups.entry(key(&m)).or_default() += 1;
            }
            for m in all_matrices(rows, cols) {
                checked += 1;
                let unique = polygeo::is_unique_for_projections(&m).map_err(|e| e.to_string())?;
                let avoids = !switches.iter().any(|s| brute_contains(&m, s));
                let grouped = groups[&key(&m)] == 1;
                ensure(unique == avoids && unique == grouped, || format!("{m:?}: unique {unique}, avoids {avoids}"))?;
            }
        }
    }
    Ok(format!("{checked} matrices up to 4x4"))
}

fn criterion_8() -> Verdict {
    let d = polygeo::find_directed_witness(9).map_err(|e| e.to_string())?.ok_or("no directed witness up to rank 9")?;
    ensure(
        d.host.rank() <= 9
            && brute_directed(&d.host)
            && !brute_directed(&d.sub)
            && d.sub.is_polyomino()
            && brute_contains(&d.host, &d.sub),
        || format!("directed witness fails revalidation: {:?} / {:?}", d.host, d.sub),
    )?;
    let k = polygeo::find_degree_witness(12).map_err(|e| e.to_string())?.ok_or("no 2-convex witness up to rank 12")?;
    ensure(
        k.host.rank() <= 12
            && brute_degree(&k.host) == Some(2)
            && brute_degree(&k.sub) == Some(3)
            && k.sub.is_polyomino()
            && brute_contains(&k.host, &k.sub),
        || format!("degree witness fails revalidation: {:?} / {:?}", k.host, k.sub),
    )?;
    Ok(format!(
        "directed {:?} > {:?}; 2-convex {:?} > degree 3 {:?}",
        d.host, d.sub, k.host, k.sub
    ))
}

/// Reports of suites already run, reused by the determinism check.
static FIRST_RUNS: Mutex<BTreeMap<Suite, String>> = Mutex::new(BTreeMap::new());

fn criterion_9() -> Verdict {
    let report = run_suite(Suite::InfiniteBasis, Some(14)).map_err(|e| e.to_string())?;
    let detail = report.checks.first().map(|c| c.detail.clone()).unwrap_or_default();
    let counts: Vec<u64> = detail
        .lines()
        .filter_map(|l| l.rsplit(' ').next()?.parse().ok())
        .collect();
    ensure(
        report.pass && counts.len() == 3 && counts.windows(2).all(|w| w[0] < w[1]),
        || report.to_text(),
    )?;
    FIRST_RUNS.lock().unwrap().insert(Suite::InfiniteBasis, report.to_text());
    Ok(detail.replace('\n', ", "))
}

fn criterion_10() -> Verdict {
    let mut images = BTreeSet::new();
    for n in 1..=4 {
        for p in Permutation::all(n) {
            let e = polygeo::embed_permutation_in_c_prime(&p);
            let avoids = !brute_contains(&e, &matrix(named::H_PRIME)) && !brute_contains(&e, &matrix(named::V_PRIME));
            ensure(e.is_polyomino() && avoids && polygeo::in_c_prime(&e) && e.rows() == 2 * n, || format!("{p:?} -> {e:?}"))?;
            ensure(images.insert(e), || format!("{p:?} collides"))?;
        }
    }
    Ok(format!("{} distinct images (1! + 2! + 3! + 4!)", images.len()))
}

fn criterion_11() -> Verdict {
    let r = check_wilf_equivalence(&[perm("123")], &[perm("132")], 7, None).map_err(|e| e.to_string())?;
    let want: Vec<u64> = (1..=7).map(|n| n * catalan(n - 1)).collect();
    ensure(r.sequences.len() == 8 && r.all_agree, || "bordered sequences differ".into())?;
    for s in &r.sequences {
        ensure(s.counts == want, || format!("basis {} {}: {:?}", s.basis, s.side, s.counts))?;
    }
    Ok(format!("8 sequences equal to {want:?}"))
}

fn criterion_12() -> Verdict {
    let mut first = FIRST_RUNS.lock().unwrap().clone();
    for s in Suite::ALL {
        if !first.contains_key(&s) {
            first.insert(s, run_suite(s, None).map_err(|e| e.to_string())?.to_text());
        }
    }
    for s in Suite::ALL {
        let again = run_suite(s, None).map_err(|e| e.to_string())?.to_text();
        ensure(again == first[&s], || format!("{s} differs between runs"))?;
    }
    Ok(format!("{} suites at default bounds, byte-identical", Suite::ALL.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("class G counts n", criterion_1),
        ("classes H, J, K central binomials", criterion_2),
        ("class F equals Av(123,132,213), Fibonacci", criterion_3),
        ("canonical and minimal m-bases", criterion_4),
        ("p-basis and minimal permutations", criterion_5),
        ("geometric/avoidance equivalences to rank 9", criterion_6),
        ("projection uniqueness to 4x4", criterion_7),
        ("non-class witnesses", criterion_8),
        ("p-basis growth of Av(M_inf)", criterion_9),
        ("C' permutation embedding", criterion_10),
        ("Wilf propagation to bordered classes", criterion_11),
        ("deterministic suite reports", criterion_12),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(note) => println!("criterion {:>2}: PASS  {title} [{note}] ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title} [{why}] ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
