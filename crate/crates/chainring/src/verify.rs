//! Independent re-checking of command results against their instances,
//! using exhaustive-search oracles where the budget allows.

use std::collections::BTreeSet;
use std::path::PathBuf;

use chainring_core::groebner::{buchberger, verify_groebner};
use chainring_core::localring::LocalElement;
use chainring_core::oracles::{brute_decode, brute_minrank, brute_rank, brute_solve, OracleBudget};
use chainring_core::polys::{MultiPoly, PolyRing};
use chainring_core::solve::{SolutionSet, DEFAULT_SOLUTION_CAP};
use chainring_core::{ChainRing, Elem, Error as CoreError, PirRing};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use crate::commands::{decoded_words, elems_from_json, gb_input, load_decoding_file, load_matrix, load_minrank, solve_ring, LoadedMatrix, LocalSystem};
use crate::error::{CliError, CliResult};
use crate::format::{budget_from_env, describe_ring, elem_from_json, order_name, pir_elem_from_json, read_json, RingDesc};
use crate::system::{System, SystemFlags};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum JobKind {
    Gb,
    Solve,
    SolveLocal,
    Rank,
    Minrank,
    RankDecode,
}

impl JobKind {
    fn name(self) -> &'static str {
        match self {
            JobKind::Gb => "gb",
            JobKind::Solve => "solve",
            JobKind::SolveLocal => "solve-local",
            JobKind::Rank => "rank",
            JobKind::Minrank => "minrank",
            JobKind::RankDecode => "rank-decode",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// The command that produced the result.
    #[arg(value_enum)]
    pub command: JobKind,
    /// Instance file given to that command.
    pub instance: PathBuf,
    /// Result JSON printed by that command.
    pub result: PathBuf,
    #[command(flatten)]
    pub system: SystemFlags,
    /// Same flag as given to `gb`.
    #[arg(long)]
    pub field_equations: bool,
}

#[derive(Default)]
struct Report {
    checks: Vec<String>,
    skipped: Vec<String>,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool) -> CliResult<()> {
        if !ok {
            return Err(CliError::Verification(format!("check failed: {name}")));
        }
        if !self.checks.iter().any(|c| c == name) {
            self.checks.push(name.into());
        }
        Ok(())
    }

    /// `None` (and a note) when the oracle declines the input as too large.
    fn oracle<T>(&mut self, name: &str, outcome: Result<T, CoreError>) -> CliResult<Option<T>> {
        match outcome {
            Ok(v) => Ok(Some(v)),
            Err(CoreError::BudgetExceeded | CoreError::TooLarge) => {
                if !self.skipped.iter().any(|c| c == name) {
                    self.skipped.push(name.into());
                }
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }
}

fn field<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| CliError::Parse(format!("result lacks `{key}`")))
}

fn array<'a>(v: &'a Value, key: &str) -> CliResult<&'a Vec<Value>> {
    field(v, key)?.as_array().ok_or_else(|| CliError::Parse(format!("`{key}` is not a list")))
}

/// Per-component parts of a result: the `components` list, or the result itself.
fn parts(result: &Value, expected: usize) -> CliResult<Vec<&Value>> {
    let parts: Vec<&Value> = match result.get("components").and_then(Value::as_array) {
        Some(list) => list.iter().collect(),
        None => vec![result],
    };
    if parts.len() != expected {
        return Err(CliError::Verification(format!("result has {} components, ring has {expected}", parts.len())));
    }
    Ok(parts)
}

pub fn verify(args: &VerifyArgs) -> CliResult<Value> {
    let result: Value = read_json(&args.result)?;
    if result.get("error").is_some() {
        return Err(CliError::Verification("the result is an error document".into()));
    }
    let budget = budget_from_env()?;
    let mut report = Report::default();
    match args.command {
        JobKind::Gb => verify_gb(args, &result, budget, &mut report)?,
        JobKind::Solve => verify_solve(args, &result, budget, &mut report)?,
        JobKind::SolveLocal => verify_solve_local(args, &result, budget, &mut report)?,
        JobKind::Rank => verify_rank(args, &result, budget, &mut report)?,
        JobKind::Minrank => verify_minrank(args, &result, budget, &mut report)?,
        JobKind::RankDecode => verify_rank_decode(args, &result, budget, &mut report)?,
    }
    Ok(json!({
        "budget": budget.max_evaluations,
        "checks": report.checks,
        "command": args.command.name(),
        "skipped": report.skipped,
        "verified": true,
    }))
}

fn parse_all(pr: &PolyRing, texts: &[Value]) -> CliResult<Vec<MultiPoly>> {
    texts
        .iter()
        .map(|t| {
            let t = t.as_str().ok_or_else(|| CliError::Parse(format!("basis entry `{t}` is not a string")))?;
            pr.parse(t).map_err(CliError::from)
        })
        .collect()
}

fn verify_gb(args: &VerifyArgs, result: &Value, budget: OracleBudget, report: &mut Report) -> CliResult<()> {
    let sys = System::load(&args.instance, &args.system)?;
    report.check("variables match", field(result, "vars")? == &json!(sys.vars))?;
    report.check("order matches", field(result, "order")? == &json!(order_name(sys.order)))?;
    let rings = sys.chain_rings();
    for (ring, part) in rings.iter().zip(parts(result, rings.len())?) {
        report.check("ring matches", field(part, "ring")? == &json!(describe_ring(ring)))?;
        let pr = sys.poly_ring(ring);
        let basis = parse_all(&pr, array(part, "basis")?)?;
        let input = gb_input(&sys, &pr, args.field_equations)?;
        report.check("basis satisfies the Groebner criterion", verify_groebner(&pr, &basis)?)?;
        let mut reduced = true;
        for f in &input {
            reduced &= pr.full_reduce(f, &basis)?.is_zero();
        }
        report.check("input reduces to zero modulo the basis", reduced)?;
        let fresh = buchberger(&pr, &input)?.generators;
        let mut inside = true;
        for g in &basis {
            inside &= pr.full_reduce(g, &fresh)?.is_zero();
        }
        report.check("basis lies in the input ideal", inside)?;
        let zeros_in = report.oracle("zero sets by exhaustive search", brute_solve(&pr, &input, budget))?;
        let zeros_gb = report.oracle("zero sets by exhaustive search", brute_solve(&pr, &basis, budget))?;
        if let (Some(a), Some(b)) = (zeros_in, zeros_gb) {
            report.check("input and basis have the same zeros", a == b)?;
        }
    }
    Ok(())
}

fn pattern_from_json(ring: &ChainRing, v: &Value) -> CliResult<Vec<Option<Elem>>> {
    let coords = v.as_array().ok_or_else(|| CliError::Parse(format!("solution `{v}` is not a list")))?;
    coords.iter().map(|c| if c.is_null() { Ok(None) } else { elem_from_json(ring, c).map(Some) }).collect()
}

fn claimed_set(nvars: usize, patterns: Vec<Vec<Option<Elem>>>) -> CliResult<SolutionSet> {
    if patterns.iter().any(|p| p.len() != nvars) {
        return Err(CliError::Verification(format!("a solution does not have {nvars} coordinates")));
    }
    Ok(SolutionSet { nvars, patterns, truncated: false, cap: DEFAULT_SOLUTION_CAP })
}

/// Claimed solutions of each component, read from a chain or product result.
fn solve_claims(sys: &System, result: &Value) -> CliResult<Vec<SolutionSet>> {
    let n = sys.vars.len();
    match (&sys.ring, result.get("solutions")) {
        (RingDesc::Chain(r), Some(Value::Array(list))) => {
            Ok(vec![claimed_set(n, list.iter().map(|t| pattern_from_json(r, t)).collect::<CliResult<_>>()?)?])
        }
        (RingDesc::Chain(r), _) => Ok(vec![claimed_set(n, array(result, "patterns")?.iter().map(|t| pattern_from_json(r, t)).collect::<CliResult<_>>()?)?]),
        (RingDesc::Product(p), Some(Value::Array(list))) => product_claims(p, n, list),
        (RingDesc::Product(p), _) => p
            .components()
            .iter()
            .zip(parts(result, p.components().len())?)
            .map(|(r, part)| claimed_set(n, array(part, "patterns")?.iter().map(|t| pattern_from_json(r, t)).collect::<CliResult<_>>()?))
            .collect(),
    }
}

/// Splits product-ring tuples into component projections; the listed set
/// must be exactly the product of those projections.
fn product_claims(p: &PirRing, n: usize, list: &[Value]) -> CliResult<Vec<SolutionSet>> {
    let tuples = list
        .iter()
        .map(|t| match t {
            Value::Array(xs) if xs.len() == n => xs.iter().map(|x| pir_elem_from_json(p, x)).collect::<CliResult<Vec<_>>>(),
            other => Err(CliError::Parse(format!("solution `{other}` does not have {n} coordinates"))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut sets = Vec::new();
    let mut product: usize = 1;
    for c in 0..p.components().len() {
        let proj: BTreeSet<Vec<Elem>> = tuples.iter().map(|t| t.iter().map(|e| e.0[c]).collect()).collect();
        product = product.saturating_mul(proj.len());
        sets.push(claimed_set(n, proj.into_iter().map(|t| t.into_iter().map(Some).collect()).collect())?);
    }
    let distinct: BTreeSet<Vec<Vec<Elem>>> = tuples.iter().map(|t| t.iter().map(|e| e.0.clone()).collect()).collect();
    if distinct.len() != product || tuples.is_empty() && !sets.iter().all(SolutionSet::is_empty) {
        return Err(CliError::Verification("listed solutions are not a product of component solution sets".into()));
    }
    Ok(sets)
}

fn check_solution_set(report: &mut Report, pr: &PolyRing, polys: &[MultiPoly], set: &SolutionSet, budget: OracleBudget) -> CliResult<()> {
    let ring = pr.ring();
    let limit = usize::try_from(budget.max_evaluations).unwrap_or(usize::MAX);
    match set.expand(ring, limit) {
        Some(tuples) => {
            let ok = tuples.iter().all(|t| polys.iter().all(|f| pr.eval(f, t).is_zero()));
            report.check("every listed tuple is a zero of the system", ok)?;
        }
        None => report.skipped.push("expanding the claimed patterns".into()),
    }
    if let Some(zeros) = report.oracle("comparison with exhaustive search", brute_solve(pr, polys, budget))? {
        let complete = zeros.iter().all(|z| set.contains(z)) && set.count(ring) == Some(zeros.len() as u128);
        report.check("solution set equals the exhaustive one", complete)?;
    }
    Ok(())
}

fn verify_solve(args: &VerifyArgs, result: &Value, budget: OracleBudget, report: &mut Report) -> CliResult<()> {
    let sys = System::load(&args.instance, &args.system)?;
    let claims = solve_claims(&sys, result)?;
    for (ring, set) in sys.chain_rings().iter().zip(&claims) {
        let pr = solve_ring(&sys, ring);
        let polys = sys.parse_over(&pr)?;
        check_solution_set(report, &pr, &polys, set, budget)?;
    }
    Ok(())
}

fn verify_solve_local(args: &VerifyArgs, result: &Value, budget: OracleBudget, report: &mut Report) -> CliResult<()> {
    let sys = LocalSystem::load(&args.instance)?;
    report.check("variables match", field(result, "vars")? == &json!(sys.vars))?;
    let n = sys.vars.len();
    let claimed = array(result, "solutions")?
        .iter()
        .map(|t| match t {
            Value::Array(xs) if xs.len() == n => xs.iter().map(|x| sys.element_from_json(x)).collect::<CliResult<Vec<_>>>(),
            other => Err(CliError::Parse(format!("solution `{other}` does not have {n} coordinates"))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    let lr = &sys.ring;
    let is_zero = |t: &[LocalElement]| sys.polys.iter().all(|f| lr.is_zero(&f.eval(lr, t)));
    report.check("every listed tuple is a zero of the system", claimed.iter().all(|t| is_zero(t)))?;
    let total = lr.size().and_then(|s| s.checked_pow(n as u32));
    if total.is_none_or(|t| t > budget.max_evaluations) {
        report.skipped.push("comparison with exhaustive search".into());
        return Ok(());
    }
    let elements = lr.elements();
    let mut zeros = BTreeSet::new();
    let mut point = vec![lr.zero(); n];
    for mut idx in 0..total.unwrap_or(0) {
        for slot in point.iter_mut().rev() {
            *slot = elements[(idx % elements.len() as u64) as usize].clone();
            idx /= elements.len() as u64;
        }
        if is_zero(&point) {
            zeros.insert(point.iter().map(|e| e.0.clone()).collect::<Vec<_>>());
        }
    }
    let listed: BTreeSet<Vec<Vec<Elem>>> = claimed.iter().map(|t| t.iter().map(|e| e.0.clone()).collect()).collect();
    report.check("solution set equals the exhaustive one", listed == zeros && listed.len() == claimed.len())
}

fn check_rank_part(report: &mut Report, ring: &ChainRing, a: &chainring_core::linalg::Matrix, part: &Value, budget: OracleBudget) -> CliResult<usize> {
    let rank = field(part, "rank")?.as_u64().ok_or_else(|| CliError::Parse("`rank` is not an integer".into()))? as usize;
    let diag = elems_from_json(ring, field(part, "smith_diagonal")?)?;
    report.check("diagonal length is min(rows, cols)", diag.len() == a.rows().min(a.cols()))?;
    let nonzero = diag.iter().take_while(|d| !d.is_zero()).count();
    let valuations: Vec<u32> = diag[..nonzero].iter().map(|d| ring.valuation(d)).collect();
    let shaped = diag[nonzero..].iter().all(Elem::is_zero) && valuations.windows(2).all(|w| w[0] <= w[1]);
    report.check("diagonal is a divisibility chain with zeros last", shaped)?;
    report.check("rank counts the nonzero diagonal entries", nonzero == rank)?;
    if let Some(brute) = report.oracle("rank by exhaustive search", brute_rank(ring, a, budget))? {
        report.check("rank equals the exhaustive rank", brute == rank)?;
    }
    Ok(rank)
}

fn verify_rank(args: &VerifyArgs, result: &Value, budget: OracleBudget, report: &mut Report) -> CliResult<()> {
    match load_matrix(&args.instance, args.system.ring.as_deref())? {
        LoadedMatrix::Chain(r, a) => {
            check_rank_part(report, &r, &a, result, budget)?;
        }
        LoadedMatrix::Product(_, p, comps) => {
            let mut ranks = Vec::new();
            for ((r, a), part) in p.components().iter().zip(&comps).zip(parts(result, comps.len())?) {
                ranks.push(check_rank_part(report, r, a, part, budget)?);
            }
            let claimed = field(result, "rank")?.as_u64().map(|v| v as usize);
            report.check("rank is the largest component rank", claimed == ranks.iter().copied().max())?;
        }
    }
    Ok(())
}

fn verify_minrank(args: &VerifyArgs, result: &Value, budget: OracleBudget, report: &mut Report) -> CliResult<()> {
    let inst = load_minrank(&args.instance, args.system.ring.as_deref())?;
    let claimed = array(result, "solutions")?.iter().map(|x| elems_from_json(inst.ring(), x)).collect::<CliResult<Vec<_>>>()?;
    let mut ok = true;
    for x in &claimed {
        ok &= x.len() == inst.k() && inst.is_solution(x)?;
    }
    report.check("every listed x has rank at most r", ok)?;
    if let Some(all) = report.oracle("comparison with exhaustive search", brute_minrank(&inst, budget))? {
        let listed: BTreeSet<Vec<Elem>> = claimed.iter().cloned().collect();
        let all: BTreeSet<Vec<Elem>> = all.into_iter().collect();
        report.check("solution set equals the exhaustive one", listed == all && listed.len() == claimed.len())?;
    }
    Ok(())
}

fn verify_rank_decode(args: &VerifyArgs, result: &Value, budget: OracleBudget, report: &mut Report) -> CliResult<()> {
    let rd = load_decoding_file(&args.instance)?;
    let s = rd.extension().ring();
    let words = decoded_words(&rd, result)?;
    let mut entries = vec![result];
    if let Some(alt) = result.get("alternatives").and_then(Value::as_array) {
        entries.extend(alt);
    }
    for (x, entry) in words.iter().zip(&entries) {
        report.check("x has k coordinates", x.len() == rd.k())?;
        report.check("c = xG", elems_from_json(s, field(entry, "c")?)? == rd.codeword(x))?;
        report.check("e = y - c", elems_from_json(s, field(entry, "e")?)? == rd.error_of(x))?;
        report.check("rank of e is at most the radius", rd.is_decoding(x))?;
    }
    let count = field(result, "count")?.as_u64();
    report.check("count matches the listed words", count == Some(words.len() as u64))?;
    let found = brute_decode(rd.extension(), rd.generator(), rd.received(), rd.radius(), budget);
    if let Some(all) = report.oracle("comparison with exhaustive search", found)? {
        let all: BTreeSet<Vec<Elem>> = all.into_iter().collect();
        report.check("every listed x is found by exhaustive search", words.iter().all(|x| all.contains(x)))?;
    }
    Ok(())
}
