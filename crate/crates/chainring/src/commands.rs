//! One function per subcommand, each returning the JSON document to print.

use std::path::{Path, PathBuf};

use chainring_core::groebner::{buchberger_with, GbOptions};
use chainring_core::linalg::{self, Matrix};
use chainring_core::localring::{contract_solutions, expand_system, parse_local, LocalElement, LocalPoly, LocalRing};
use chainring_core::minrank::{solve_minrank, MinRankInstance, MinRankOptions, Strategy};
use chainring_core::oracles::brute_minrank;
use chainring_core::polys::{MonomialOrder, MultiPoly, PolyRing};
use chainring_core::rankdecode::{decode, DecodeStrategy, DecodedWord, RankDecodingInstance};
use chainring_core::solve::{ring_vanishing_polynomial, solve_system, solve_system_lifting, PirSolutionSet, SolutionSet, SolveOptions, DEFAULT_SOLUTION_CAP};
use chainring_core::{ChainRing, Elem, PirElem, PirRing};
use clap::{Args, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::format::{
    budget_from_env, describe_extension, describe_ring, elem_from_json, elem_to_json, infer_vars, matrix_from_json, order_name, parse_chain_ring,
    parse_ring, pir_elem_from_json, pir_elem_to_json, read_json, vec_from_json, vec_to_json, ExtensionSpec, RingDesc,
};
use crate::system::{System, SystemFlags};

/// Largest solution set `solve-local` will contract.
const LOCAL_EXPANSION_CAP: u128 = 1 << 20;

/// Picks the input file from a positional argument or its named flag.
pub fn input_path<'a>(positional: &'a Option<PathBuf>, named: &'a Option<PathBuf>, flag: &str) -> CliResult<&'a Path> {
    match (positional, named) {
        (Some(p), None) | (None, Some(p)) => Ok(p),
        (Some(_), Some(_)) => Err(CliError::Usage(format!("give the input either positionally or with --{flag}, not both"))),
        (None, None) => Err(CliError::Usage(format!("missing input file (positional or --{flag})"))),
    }
}

fn count_json(count: Option<u128>) -> Value {
    match count {
        Some(c) => u64::try_from(c).map_or_else(|_| json!(c.to_string()), |c| json!(c)),
        None => Value::Null,
    }
}

fn build_matrix(rows: usize, cols: usize, entries: Vec<Vec<Elem>>) -> CliResult<Matrix> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(CliError::Domain(format!("matrix data does not have shape {rows}x{cols}")));
    }
    if rows == 0 {
        return Ok(Matrix::zero(0, cols));
    }
    Matrix::from_rows(entries).map_err(CliError::from)
}

#[derive(Args, Debug, Default)]
pub struct GbArgs {
    #[command(flatten)]
    pub system: SystemFlags,
    /// Append the vanishing polynomial of the ring in every variable.
    #[arg(long)]
    pub field_equations: bool,
    /// Discard critical pairs by the chain and product criteria.
    #[arg(long)]
    pub criteria: bool,
    #[arg(long = "system", value_name = "FILE")]
    pub system_file: Option<PathBuf>,
    /// System file (JSON, or text with --text).
    pub file: Option<PathBuf>,
}

/// The system as handed to Buchberger's algorithm.
pub fn gb_input(sys: &System, pr: &PolyRing, field_equations: bool) -> CliResult<Vec<MultiPoly>> {
    let mut input = sys.parse_over(pr)?;
    if field_equations {
        for v in 0..pr.nvars() {
            input.push(ring_vanishing_polynomial(pr, v)?);
        }
    }
    Ok(input)
}

/// Merges per-component results: a chain ring gives the single part's
/// fields, a product lists them under `components`.
fn merge_components(sys: &System, mut out: Map<String, Value>, parts: Vec<Value>) -> Value {
    match (&sys.ring, parts.as_slice()) {
        (RingDesc::Chain(_), [Value::Object(only)]) => out.extend(only.clone()),
        _ => {
            out.insert("ring".into(), json!(sys.ring_name));
            out.insert("components".into(), Value::Array(parts));
        }
    }
    Value::Object(out)
}

pub fn gb(args: &GbArgs) -> CliResult<Value> {
    let sys = System::load(input_path(&args.file, &args.system_file, "system")?, &args.system)?;
    let opts = GbOptions { criteria: args.criteria, ..GbOptions::default() };
    let parts = sys
        .chain_rings()
        .iter()
        .map(|ring| {
            let pr = sys.poly_ring(ring);
            let basis = buchberger_with(&pr, &gb_input(&sys, &pr, args.field_equations)?, opts)?;
            let text: Vec<String> = basis.generators.iter().map(|g| pr.format(g)).collect();
            Ok(json!({ "ring": describe_ring(ring), "basis": text }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut out = Map::new();
    out.insert("order".into(), json!(order_name(sys.order)));
    out.insert("vars".into(), json!(sys.vars));
    Ok(merge_components(&sys, out, parts))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    /// Lexicographic basis, then back substitution.
    #[default]
    Elimination,
    /// Digit-by-digit lifting of residue-field roots.
    Lifting,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub system: SystemFlags,
    #[arg(long, value_enum, default_value_t = SolveMethod::Elimination)]
    pub method: SolveMethod,
    /// Add the vanishing polynomial of the ring in every variable.
    #[arg(long)]
    pub field_equations: bool,
    /// List tuples only up to this many; larger sets are printed as patterns.
    #[arg(long, default_value_t = 4096)]
    pub max_solutions: usize,
    #[arg(long = "system", value_name = "FILE")]
    pub system_file: Option<PathBuf>,
    /// System file (JSON, or text with --text).
    pub file: Option<PathBuf>,
}

/// The polynomial ring solving works in: the system's variables, lex order.
pub fn solve_ring(sys: &System, ring: &ChainRing) -> PolyRing {
    PolyRing::with_names(ring.clone(), sys.vars.clone(), MonomialOrder::Lex)
}

fn solve_component(sys: &System, ring: &ChainRing, method: SolveMethod, field_equations: bool) -> CliResult<SolutionSet> {
    let pr = solve_ring(sys, ring);
    let polys = sys.parse_over(&pr)?;
    let set = match method {
        SolveMethod::Elimination => solve_system(&pr, &polys, SolveOptions { field_equations, cap: DEFAULT_SOLUTION_CAP })?,
        SolveMethod::Lifting => solve_system_lifting(&pr, &polys, DEFAULT_SOLUTION_CAP)?,
    };
    if set.truncated {
        return Err(CliError::Resource(format!("more than {} solution patterns", set.cap)));
    }
    Ok(set)
}

fn patterns_json(ring: &ChainRing, set: &SolutionSet) -> Value {
    let patterns: Vec<Value> = set
        .patterns
        .iter()
        .map(|p| Value::Array(p.iter().map(|x| x.as_ref().map_or(Value::Null, |e| elem_to_json(ring, e))).collect()))
        .collect();
    json!({ "count": count_json(set.count(ring)), "patterns": patterns })
}

fn sorted_pir_tuples(ring: &PirRing, mut tuples: Vec<Vec<PirElem>>) -> Vec<Vec<PirElem>> {
    tuples.sort_by_cached_key(|t| t.iter().map(|e| (ring.to_integer(e), e.0.clone())).collect::<Vec<_>>());
    tuples
}

pub fn solutions_json(ring: &RingDesc, sets: Vec<SolutionSet>, max: usize) -> Value {
    match ring {
        RingDesc::Chain(r) => match sets[0].expand(r, max) {
            Some(list) => json!({ "solutions": list.iter().map(|t| vec_to_json(r, t)).collect::<Vec<_>>() }),
            None => patterns_json(r, &sets[0]),
        },
        RingDesc::Product(p) => {
            let set = PirSolutionSet { components: sets };
            match set.expand(p, max) {
                Some(list) => {
                    let list = sorted_pir_tuples(p, list);
                    let rows: Vec<Value> = list.iter().map(|t| Value::Array(t.iter().map(|e| pir_elem_to_json(p, e)).collect())).collect();
                    json!({ "solutions": rows })
                }
                None => {
                    let parts: Vec<Value> = p
                        .components()
                        .iter()
                        .zip(&set.components)
                        .map(|(r, s)| {
                            let mut v = patterns_json(r, s);
                            v["ring"] = json!(describe_ring(r));
                            v
                        })
                        .collect();
                    json!({ "components": parts })
                }
            }
        }
    }
}

pub fn solve(args: &SolveArgs) -> CliResult<Value> {
    let sys = System::load(input_path(&args.file, &args.system_file, "system")?, &args.system)?;
    let sets = sys
        .chain_rings()
        .iter()
        .map(|r| solve_component(&sys, r, args.method, args.field_equations))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(solutions_json(&sys.ring, sets, args.max_solutions))
}

/// `Z/p^k [X] / (f(X), p^t X)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSpec {
    pub p: u64,
    pub k: u32,
    /// Monic `f`, low to high.
    pub modulus: Vec<i64>,
    pub truncation: u32,
}

/// A free presentation: `ann[j]` is the annihilator exponent of basis
/// element `j`, `table[i][j]` the coordinates of `t_i t_j`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub base: String,
    pub ann: Vec<u32>,
    pub table: Vec<Vec<Vec<Value>>>,
    pub one: Vec<Value>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LocalRingSpec {
    Quotient(QuotientSpec),
    Table(TableSpec),
}

impl LocalRingSpec {
    pub fn build(&self) -> CliResult<LocalRing> {
        match self {
            LocalRingSpec::Quotient(q) => Ok(LocalRing::truncated_quotient(q.p, q.k, &q.modulus, q.truncation)?),
            LocalRingSpec::Table(t) => {
                let base = parse_chain_ring(&t.base)?;
                let table = t.table.iter().map(|row| row.iter().map(|c| vec_from_json(&base, c)).collect()).collect::<CliResult<_>>()?;
                let one = vec_from_json(&base, &t.one)?;
                Ok(LocalRing::new(base, t.ann.clone(), table, one)?)
            }
        }
    }
}

/// `basis` names the basis elements (default `e0, e1, ...`); `vars` defaults
/// to the remaining identifiers in `polys`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalFile {
    pub ring: LocalRingSpec,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub vars: Option<Vec<String>>,
    pub polys: Vec<String>,
}

pub struct LocalSystem {
    pub ring: LocalRing,
    pub basis: Vec<String>,
    pub vars: Vec<String>,
    pub polys: Vec<LocalPoly>,
}

impl LocalSystem {
    pub fn load(path: &Path) -> CliResult<LocalSystem> {
        let file: LocalFile = read_json(path)?;
        if file.polys.is_empty() {
            return Err(CliError::Usage("the polynomial system is empty".into()));
        }
        let ring = file.ring.build()?;
        let basis = file.basis.unwrap_or_else(|| (0..ring.dim()).map(|j| format!("e{j}")).collect());
        if basis.len() != ring.dim() {
            return Err(CliError::Domain(format!("{} basis names for a ring of dimension {}", basis.len(), ring.dim())));
        }
        let vars = file.vars.unwrap_or_else(|| {
            infer_vars(&file.polys, ring.base().rank()).into_iter().filter(|v| !basis.contains(v)).collect()
        });
        if vars.is_empty() {
            return Err(CliError::Usage("the system has no variables".into()));
        }
        let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let basis_refs: Vec<&str> = basis.iter().map(String::as_str).collect();
        let polys = file
            .polys
            .iter()
            .enumerate()
            .map(|(i, text)| parse_local(&ring, &var_refs, &basis_refs, text).map_err(|e| CliError::Parse(format!("polynomial {}: {e}", i + 1))))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(LocalSystem { ring, basis, vars, polys })
    }

    pub fn element_json(&self, e: &LocalElement) -> Value {
        vec_to_json(self.ring.base(), &e.0)
    }

    pub fn element_from_json(&self, v: &Value) -> CliResult<LocalElement> {
        match v {
            Value::Array(cs) if cs.len() == self.ring.dim() => Ok(LocalElement(vec_from_json(self.ring.base(), cs)?)),
            other => Err(CliError::Parse(format!("a local-ring element is a list of {} coordinates, got `{other}`", self.ring.dim()))),
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveLocalArgs {
    /// Add the vanishing polynomial of the base ring to the expanded system.
    #[arg(long)]
    pub field_equations: bool,
    /// Refuse to print more tuples than this.
    #[arg(long, default_value_t = 4096)]
    pub max_solutions: usize,
    #[arg(long = "system", value_name = "FILE")]
    pub system_file: Option<PathBuf>,
    pub file: Option<PathBuf>,
}

pub fn solve_local(args: &SolveLocalArgs) -> CliResult<Value> {
    let sys = LocalSystem::load(input_path(&args.file, &args.system_file, "system")?)?;
    let var_refs: Vec<&str> = sys.vars.iter().map(String::as_str).collect();
    let (pr, expanded) = expand_system(&sys.ring, &var_refs, &sys.polys)?;
    let set = solve_system(&pr, &expanded, SolveOptions { field_equations: args.field_equations, cap: DEFAULT_SOLUTION_CAP })?;
    if set.truncated || set.count(pr.ring()).is_none_or(|c| c > LOCAL_EXPANSION_CAP) {
        return Err(CliError::Resource("solution set of the expanded system is too large to contract".into()));
    }
    let sols = contract_solutions(&sys.ring, sys.vars.len(), &set)?;
    if sols.len() > args.max_solutions {
        return Err(CliError::Resource(format!("{} solutions exceed --max-solutions {}", sols.len(), args.max_solutions)));
    }
    let rows: Vec<Value> = sols.iter().map(|t| Value::Array(t.iter().map(|e| sys.element_json(e)).collect())).collect();
    Ok(json!({ "basis": sys.basis, "vars": sys.vars, "solutions": rows }))
}

/// `{"ring": "zpk:2:3", "rows": 2, "cols": 2, "data": [[2, 0], [0, 4]]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default)]
    pub ring: Option<String>,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Value>>,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long = "matrix", value_name = "FILE")]
    pub matrix_file: Option<PathBuf>,
    pub file: Option<PathBuf>,
}

pub enum LoadedMatrix {
    Chain(ChainRing, Matrix),
    Product(String, PirRing, Vec<Matrix>),
}

pub fn load_matrix(path: &Path, ring_flag: Option<&str>) -> CliResult<LoadedMatrix> {
    let file: MatrixFile = read_json(path)?;
    let name = ring_flag.map(String::from).or(file.ring).ok_or_else(|| CliError::Usage("no ring given; use --ring or a `ring` field".into()))?;
    match parse_ring(&name)? {
        RingDesc::Chain(r) => {
            let entries = file.data.iter().map(|row| vec_from_json(&r, row)).collect::<CliResult<Vec<_>>>()?;
            let m = build_matrix(file.rows, file.cols, entries)?;
            Ok(LoadedMatrix::Chain(r, m))
        }
        RingDesc::Product(p) => {
            let entries = file
                .data
                .iter()
                .map(|row| row.iter().map(|v| pir_elem_from_json(&p, v)).collect::<CliResult<Vec<_>>>())
                .collect::<CliResult<Vec<_>>>()?;
            let comps = (0..p.components().len())
                .map(|c| build_matrix(file.rows, file.cols, entries.iter().map(|row| row.iter().map(|e| e.0[c]).collect()).collect()))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(LoadedMatrix::Product(name, p, comps))
        }
    }
}

fn smith_diagonal(ring: &ChainRing, a: &Matrix) -> (usize, Value) {
    let snf = linalg::smith_normal_form(ring, a);
    let diag: Vec<Value> = (0..a.rows().min(a.cols())).map(|i| elem_to_json(ring, &snf.d[(i, i)])).collect();
    (snf.rank(), Value::Array(diag))
}

pub fn rank(args: &RankArgs) -> CliResult<Value> {
    match load_matrix(input_path(&args.file, &args.matrix_file, "matrix")?, args.ring.as_deref())? {
        LoadedMatrix::Chain(r, a) => {
            let (rank, diag) = smith_diagonal(&r, &a);
            Ok(json!({ "ring": describe_ring(&r), "rank": rank, "smith_diagonal": diag }))
        }
        LoadedMatrix::Product(name, p, comps) => {
            let (rank, _) = linalg::pir_rank(&p, &comps)?;
            let parts: Vec<Value> = p
                .components()
                .iter()
                .zip(&comps)
                .map(|(r, a)| {
                    let (rank, diag) = smith_diagonal(r, a);
                    json!({ "ring": describe_ring(r), "rank": rank, "smith_diagonal": diag })
                })
                .collect();
            Ok(json!({ "ring": name, "rank": rank, "components": parts }))
        }
    }
}

/// `{"ring": ..., "r": 1, "m0": [[...]], "matrices": [[[...]], ...]}`; `m0`
/// may be left out for a homogeneous instance.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinRankFile {
    #[serde(default)]
    pub ring: Option<String>,
    pub r: usize,
    #[serde(default)]
    pub m0: Option<Vec<Vec<Value>>>,
    pub matrices: Vec<Vec<Vec<Value>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum MinRankStrategy {
    /// Kipnis-Shamir modelling.
    #[default]
    Ks,
    /// Support-Minors modelling, Gröbner basis.
    SmGb,
    /// Support-Minors modelling, linearization.
    SmLin,
    /// Exhaustive search.
    Brute,
}

impl MinRankStrategy {
    pub fn name(self) -> &'static str {
        match self {
            MinRankStrategy::Ks => "ks",
            MinRankStrategy::SmGb => "sm-gb",
            MinRankStrategy::SmLin => "sm-lin",
            MinRankStrategy::Brute => "brute",
        }
    }
}

#[derive(Args, Debug)]
pub struct MinRankArgs {
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long, value_enum, default_value_t = MinRankStrategy::Ks)]
    pub strategy: MinRankStrategy,
    #[arg(long)]
    pub field_equations: bool,
    /// Work with the transposed matrices.
    #[arg(long)]
    pub transpose: bool,
    #[arg(long = "instance", value_name = "FILE")]
    pub instance_file: Option<PathBuf>,
    pub file: Option<PathBuf>,
}

pub fn load_minrank(path: &Path, ring_flag: Option<&str>) -> CliResult<MinRankInstance> {
    let file: MinRankFile = read_json(path)?;
    let name = ring_flag.map(String::from).or(file.ring).ok_or_else(|| CliError::Usage("no ring given; use --ring or a `ring` field".into()))?;
    let ring = parse_chain_ring(&name)?;
    let m0 = file.m0.as_deref().map(|m| matrix_from_json(&ring, m)).transpose()?;
    let gens = file.matrices.iter().map(|m| matrix_from_json(&ring, m)).collect::<CliResult<Vec<_>>>()?;
    Ok(MinRankInstance::new(ring, m0, gens, file.r)?)
}

pub fn minrank(args: &MinRankArgs) -> CliResult<Value> {
    let inst = load_minrank(input_path(&args.file, &args.instance_file, "instance")?, args.ring.as_deref())?;
    let opts = MinRankOptions { field_equations: args.field_equations, transpose: args.transpose };
    let mut sols = match args.strategy {
        MinRankStrategy::Brute => brute_minrank(&inst, budget_from_env()?)?,
        MinRankStrategy::Ks => solve_minrank(&inst, Strategy::KipnisShamir, opts)?,
        MinRankStrategy::SmGb => solve_minrank(&inst, Strategy::SmGroebner, opts)?,
        MinRankStrategy::SmLin => solve_minrank(&inst, Strategy::SmLinearization, opts)?,
    };
    sols.sort();
    sols.dedup();
    let ring = inst.ring();
    Ok(json!({
        "ring": describe_ring(ring),
        "solutions": sols.iter().map(|x| vec_to_json(ring, x)).collect::<Vec<_>>(),
        "strategy": args.strategy.name(),
    }))
}

/// Single-file decoding instance. Elements of the extension are coordinate
/// lists in `1, a, ..., a^(m-1)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeFile {
    pub extension: ExtensionSpec,
    pub generator: Vec<Vec<Value>>,
    pub received: Vec<Value>,
    pub radius: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum DecodeChoice {
    /// Try the strategies below in a fixed cascade.
    #[default]
    Auto,
    /// Linearized key equation.
    KeyLin,
    /// Support-Minors linearization of the MinRank reduction.
    SmLin,
    /// Key equation by Gröbner bases.
    KeyGb,
    /// Support-Minors equations over the extension, by Gröbner bases.
    SmGb,
    /// Kipnis-Shamir on the MinRank reduction.
    MinrankKs,
}

impl DecodeChoice {
    fn strategy(self) -> DecodeStrategy {
        match self {
            DecodeChoice::Auto => DecodeStrategy::Auto,
            DecodeChoice::KeyLin => DecodeStrategy::KeyLinearization,
            DecodeChoice::SmLin => DecodeStrategy::SmLinearization,
            DecodeChoice::KeyGb => DecodeStrategy::KeyGroebner,
            DecodeChoice::SmGb => DecodeStrategy::SupportMinors,
            DecodeChoice::MinrankKs => DecodeStrategy::MinRankKs,
        }
    }
}

pub fn strategy_name(s: DecodeStrategy) -> &'static str {
    match s {
        DecodeStrategy::Auto => "auto",
        DecodeStrategy::KeyLinearization => "key-lin",
        DecodeStrategy::SmLinearization => "sm-lin",
        DecodeStrategy::KeyGroebner => "key-gb",
        DecodeStrategy::SupportMinors => "sm-gb",
        DecodeStrategy::MinRankKs => "minrank-ks",
    }
}

#[derive(Args, Debug, Default)]
pub struct RankDecodeArgs {
    /// Extension file: {"base": "zpk:P:K", "degree": m} or with "modulus".
    #[arg(long, value_name = "FILE")]
    pub extension: Option<PathBuf>,
    /// Generator matrix file: a list of rows.
    #[arg(long, value_name = "FILE")]
    pub generator: Option<PathBuf>,
    /// Received word file: a list of elements.
    #[arg(long, value_name = "FILE")]
    pub received: Option<PathBuf>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, value_enum, default_value_t = DecodeChoice::Auto)]
    pub strategy: DecodeChoice,
    /// Single-file instance with extension, generator, received and radius.
    pub instance: Option<PathBuf>,
}

fn assemble_decoding(file: DecodeFile) -> CliResult<RankDecodingInstance> {
    let ext = file.extension.build()?;
    let s = ext.ring().clone();
    let g = file.generator.iter().map(|row| vec_from_json(&s, row)).collect::<CliResult<Vec<_>>>()?;
    let y = vec_from_json(&s, &file.received)?;
    Ok(RankDecodingInstance::new(ext, g, y, file.radius)?)
}

pub fn load_decoding_file(path: &Path) -> CliResult<RankDecodingInstance> {
    assemble_decoding(read_json(path)?)
}

pub fn load_decoding(args: &RankDecodeArgs) -> CliResult<RankDecodingInstance> {
    let parts = (&args.extension, &args.generator, &args.received, args.radius);
    match (&args.instance, parts) {
        (Some(path), (None, None, None, None)) => load_decoding_file(path),
        (Some(_), _) => Err(CliError::Usage("give either an instance file or --extension/--generator/--received/--radius".into())),
        (None, (Some(e), Some(g), Some(y), Some(radius))) => assemble_decoding(DecodeFile {
            extension: read_json(e)?,
            generator: read_json(g)?,
            received: read_json(y)?,
            radius,
        }),
        (None, _) => Err(CliError::Usage("missing --extension, --generator, --received or --radius".into())),
    }
}

fn word_json(ring: &ChainRing, w: &DecodedWord) -> Value {
    json!({ "x": vec_to_json(ring, &w.x), "c": vec_to_json(ring, &w.c), "e": vec_to_json(ring, &w.e) })
}

pub fn rank_decode(args: &RankDecodeArgs) -> CliResult<Value> {
    let rd = load_decoding(args)?;
    let found = decode(&rd, args.strategy.strategy())?;
    if let Some(bad) = found.words.iter().find(|w| !rd.is_decoding(&w.x)) {
        return Err(CliError::Verification(format!("decoder returned x = {:?} outside the radius", bad.x)));
    }
    let s = rd.extension().ring();
    let mut out = match word_json(s, &found.words[0]) {
        Value::Object(m) => m,
        _ => unreachable!("word_json builds an object"),
    };
    out.insert("count".into(), json!(found.words.len()));
    out.insert("extension".into(), describe_extension(rd.extension()));
    out.insert("strategy_used".into(), json!(strategy_name(found.strategy)));
    out.insert("verified".into(), json!(true));
    if found.words.len() > 1 {
        out.insert("alternatives".into(), Value::Array(found.words[1..].iter().map(|w| word_json(s, w)).collect()));
    }
    Ok(Value::Object(out))
}

/// Reads `x` back from a decoding result.
pub fn decoded_words(rd: &RankDecodingInstance, result: &Value) -> CliResult<Vec<Vec<Elem>>> {
    let s = rd.extension().ring();
    let read = |w: &Value| -> CliResult<Vec<Elem>> {
        let x = w.get("x").and_then(Value::as_array).ok_or_else(|| CliError::Parse("decoding result lacks `x`".into()))?;
        vec_from_json(s, x)
    };
    let mut words = vec![read(result)?];
    if let Some(alt) = result.get("alternatives").and_then(Value::as_array) {
        for w in alt {
            words.push(read(w)?);
        }
    }
    Ok(words)
}

/// Reads an element list back, shared by the verifiers.
pub fn elems_from_json(ring: &ChainRing, v: &Value) -> CliResult<Vec<Elem>> {
    match v {
        Value::Array(xs) => xs.iter().map(|x| elem_from_json(ring, x)).collect(),
        other => Err(CliError::Parse(format!("expected a list of elements, got `{other}`"))),
    }
}
