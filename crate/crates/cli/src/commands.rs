use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use subpat_core::bases::{canonical_m_basis, minimal_m_bases, p_basis, Manifest};
use subpat_core::classes::{ClassCache, CountSequence};
use subpat_core::matcore::parse_matrices;
use subpat_core::suites::{run_suite, Suite, SuiteReport};
use subpat_core::wilfkit::check_wilf_equivalence;
use subpat_core::{named, BinaryMatrix, Budget, ClassSpec, Error, GroundSet, MatrixSet, Permutation};

use crate::args::{BasisKind, ClassArgs, Format};
use crate::Failure;

pub struct Ctx {
    pub format: Format,
    pub cache: Option<ClassCache>,
}

/// Output text and whether every verification in it passed.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn compact(m: &BinaryMatrix) -> String {
    format!("{m:?}").trim_matches(['[', ']']).to_string()
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn parse_avoid(arg: &str) -> Result<Vec<BinaryMatrix>, Failure> {
    let arg = arg.trim();
    if arg.eq_ignore_ascii_case("none") || arg.is_empty() {
        return Ok(Vec::new());
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{arg}: {e}")))?;
        return parse_matrices(&text).map_err(|e| usage(format!("{arg}: {e}")));
    }
    arg.split(',')
        .map(|part| {
            let part = part.trim();
            named::lookup(part)
                .or_else(|| part.parse().ok())
                .ok_or_else(|| usage(format!("{part:?} is neither a file, a named matrix nor a matrix")))
        })
        .collect()
}

fn class_spec(c: &ClassArgs) -> Result<ClassSpec, Failure> {
    let ground: GroundSet = c.ground.parse().map_err(|e: Error| usage(e.to_string()))?;
    Ok(ClassSpec::new(ground, MatrixSet::new(parse_avoid(&c.avoid)?)))
}

fn budget_with(g: GroundSet, over: Option<usize>) -> Budget {
    let mut b = Budget::default();
    if let Some(r) = over {
        match g {
            GroundSet::Permutations => b.permutations = r,
            GroundSet::Polyominoes => b.polyominoes = r,
            GroundSet::BinaryMatrices => b.binary_matrices = r,
            GroundSet::QuasiPermutationMatrices => b.quasi_permutations = r,
        }
    }
    b
}

fn class_header(c: &ClassSpec) -> String {
    let mut s = format!("# class {c}\n# spec {}\n", c.spec_hash());
    for w in c.warnings() {
        let _ = writeln!(s, "# warning {w}");
    }
    s
}

pub fn enumerate(ctx: &Ctx, class: &ClassArgs, max: usize, budget: Option<usize>) -> Result<Outcome, Failure> {
    let c = class_spec(class)?;
    let b = budget_with(c.ground(), budget);
    let seq: CountSequence = match &ctx.cache {
        Some(cache) => c.count_sequence_cached(max, &b, cache)?,
        None => c.count_sequence(max, &b)?,
    };
    let text = match ctx.format {
        Format::Text => {
            let mut s = class_header(&c);
            for (r, n) in seq.terms() {
                let _ = writeln!(s, "{r} {n}");
            }
            s
        }
        Format::Csv => seq.to_csv(),
        Format::Bfile => seq.to_bfile(),
        Format::Json => json_text(&json!({
            "spec_hash": c.spec_hash(),
            "ground": c.ground(),
            "bound": max,
            "complete": true,
            "items": seq.terms().iter().map(|(r, n)| json!({"rank": r, "count": n})).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome::ok(text))
}

pub fn generate(ctx: &Ctx, class: &ClassArgs, rank: usize, budget: Option<usize>) -> Result<Outcome, Failure> {
    let c = class_spec(class)?;
    budget_with(c.ground(), budget).check(c.ground(), rank, "generate rank")?;
    let ms = c.members(rank);
    let text = match ctx.format {
        Format::Text => {
            let mut s = class_header(&c);
            let _ = writeln!(s, "# rank {rank}: {} members\n", ms.len());
            s.push_str(&subpat_core::matcore::format_matrices(&ms));
            s
        }
        Format::Csv => {
            let mut s = String::from("index,matrix\n");
            for (i, m) in ms.iter().enumerate() {
                let _ = writeln!(s, "{},{}", i + 1, compact(m));
            }
            s
        }
        Format::Json => json_text(&json!({
            "spec_hash": c.spec_hash(),
            "ground": c.ground(),
            "bound": rank,
            "complete": true,
            "items": ms,
        })),
        Format::Bfile => return Err(usage("bfile output is only available for counts")),
    };
    Ok(Outcome::ok(text))
}

pub fn basis(
    ctx: &Ctx,
    kind: BasisKind,
    class: &ClassArgs,
    rmax: Option<usize>,
    dmax: Option<usize>,
    budget: Option<usize>,
) -> Result<Outcome, Failure> {
    let c = class_spec(class)?;
    let perms = c.ground() == GroundSet::Permutations;
    let dmax = dmax.unwrap_or(if perms { 8 } else { 7 });
    let budget = budget.unwrap_or(if perms { 8 } else { 11 });
    let manifest = match kind {
        BasisKind::P => {
            let r = rmax.unwrap_or(if perms { 8 } else { 9 });
            Manifest::from_p_basis(&c, &p_basis(&c, r)?, r)
        }
        BasisKind::Canonical => Manifest::from_canonical(&c, &canonical_m_basis(&c, dmax, budget)?),
        BasisKind::Minimal => {
            let r = rmax.unwrap_or(if perms { 8 } else { 9 });
            let canonical = canonical_m_basis(&c, dmax, budget)?;
            Manifest::from_minimal(&c, &minimal_m_bases(&c, &canonical, r)?, r)
        }
    };
    let text = match ctx.format {
        Format::Text => manifest.to_text(),
        Format::Json => json_text(&serde_json::to_value(&manifest).expect("manifest serializes")),
        Format::Csv => {
            let mut s = String::from("item,matrix\n");
            for (i, item) in manifest.items.iter().enumerate() {
                for m in item {
                    let _ = writeln!(s, "{},{}", i + 1, compact(m));
                }
            }
            s
        }
        Format::Bfile => return Err(usage("bfile output is only available for counts")),
    };
    Ok(Outcome::ok(text))
}

fn report_json(r: &SuiteReport) -> Value {
    json!({
        "spec_hash": r.suite.spec_hash(),
        "suite": r.suite,
        "version": r.version,
        "bound": r.bound,
        "complete": true,
        "pass": r.pass,
        "items": r.checks,
    })
}

pub fn verify(ctx: &Ctx, suite: &str, max_rank: Option<usize>, max_size: Option<usize>) -> Result<Outcome, Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(|e: Error| usage(e.to_string()))?]
    };
    let mut reports = Vec::new();
    for s in suites {
        let bound = if s.bound_is_size() { max_size } else { max_rank };
        reports.push(run_suite(s, bound)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let text = match ctx.format {
        Format::Text => reports.iter().map(SuiteReport::to_text).collect::<Vec<_>>().join("\n"),
        Format::Json if reports.len() == 1 => json_text(&report_json(&reports[0])),
        Format::Json => json_text(&Value::Array(reports.iter().map(report_json).collect())),
        Format::Csv => {
            let mut s = String::from("suite,check,bound,checked,pass\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(s, "{},\"{}\",{},{},{}", r.suite, c.name.replace('"', "'"), c.bound, c.checked, c.pass);
                }
            }
            s
        }
        Format::Bfile => return Err(usage("bfile output is only available for counts")),
    };
    Ok(Outcome { text, pass })
}

fn parse_perms(s: &str) -> Result<Vec<Permutation>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse::<Permutation>().map_err(|e| usage(format!("{p:?}: {e}"))))
        .collect()
}

pub fn wilf(ctx: &Ctx, b1: &str, b2: &str, max_size: usize) -> Result<Outcome, Failure> {
    let (p1, p2) = (parse_perms(b1)?, parse_perms(b2)?);
    let r = check_wilf_equivalence(&p1, &p2, max_size, ctx.cache.as_ref())?;
    let label = |ps: &[Permutation]| ps.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(",");
    let text = match ctx.format {
        Format::Text => {
            let mut s = format!("b1 {}\nb2 {}\nmax size {max_size}\n", label(&p1), label(&p2));
            let _ = writeln!(s, "bases agree {}", r.bases_agree);
            for q in &r.sequences {
                let c: Vec<String> = q.counts.iter().map(u64::to_string).collect();
                let _ = writeln!(s, "b{} {:<6} {}", q.basis, q.side.to_string(), c.join(","));
            }
            let _ = writeln!(s, "all agree {}", r.all_agree);
            s
        }
        Format::Csv => {
            let mut s = String::from("basis,side,n,count\n");
            for q in &r.sequences {
                for (i, n) in q.counts.iter().enumerate() {
                    let _ = writeln!(s, "{},{},{},{n}", q.basis, q.side, i + 1);
                }
            }
            s
        }
        Format::Json => json_text(&json!({
            "spec_hash": Value::Null,
            "b1": label(&p1),
            "b2": label(&p2),
            "bound": max_size,
            "complete": true,
            "pass": r.all_agree,
            "items": r.sequences,
            "bases_agree": r.bases_agree,
        })),
        Format::Bfile => return Err(usage("bfile output is only available for counts")),
    };
    Ok(Outcome {
        text,
        pass: r.all_agree,
    })
}
