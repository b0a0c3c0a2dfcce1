//! Command implementations behind the `qvertex` binary.
//!
//! Every command returns its report text and an exit code: 0 when all
//! selected checks pass, 1 on a failed check, 2 on a usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qvertex_basis::{
    bijection_check, character, complete_diagram, family, family_ids, family_rank, rr_product_side,
    rr_sum_side, series_eq, BasisError, Diagram,
};
use qvertex_fock::{FockKey, FockVector};
use qvertex_qva::{
    associativity_suite, default_probes, evaluation_agrees, relation_ids, rewrite, verify_relation,
    Evaluator, QVAMonomial, QvaError, Report,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::fmt::Write;
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Relations in the core suite.
pub const CORE_SUITE: [&str; 9] = ["R1", "R2", "C1", "C2", "Q1", "Q2", "Q3", "Q4", "Q5"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Qva(#[from] QvaError),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Qva(QvaError::UnknownRelation(_) | QvaError::Parse(..)) => EXIT_USAGE,
            CliError::Basis(BasisError::UnknownFamily(_) | BasisError::NotQuantum(_)) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "qvertex", version, about = "Exact checks for level-1 q-vertex operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check catalog relations on truncated windows.
    Verify(VerifyArgs),
    /// Compare characters with both sides of the Rogers-Ramanujan identities.
    Characters(DegArgs),
    /// Check diagram completion is a degree-preserving bijection.
    Bijection(DegArgs),
    /// Certify linear independence of a basis family by exact rank.
    Rank(RankArgs),
    /// Rewrite a monomial into its spanning set and compare evaluations.
    Reduce(ReduceArgs),
    /// Draw the column diagram of an `x` monomial.
    Diagram(MonomialArg),
    /// List relation ids and basis families.
    List,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Exponent window `LO HI`; exponents are doubled.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    pub window: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// `core` or `all`.
    #[arg(long)]
    pub suite: Option<String>,
    /// Relation id; may repeat.
    #[arg(long)]
    pub relation: Vec<String>,
    /// Maximal `z0` and `z2` orders for V4.
    #[arg(long, num_args = 2, value_names = ["P", "S"])]
    pub orders: Option<Vec<u32>>,
    /// Number of probe vectors.
    #[arg(long, default_value_t = 3)]
    pub probes: usize,
    /// Seed for extra probes beyond the three fixed ones.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct DegArgs {
    #[arg(long, default_value_t = 0)]
    pub i: i64,
    #[arg(long = "max-deg", default_value_t = 30)]
    pub max_deg: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct RankArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long = "max-deg", default_value_t = 12)]
    pub max_deg: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct ReduceArgs {
    /// e.g. `x:[-1,-3]:unit` or `xhat:[-2,-2]:Yhat`.
    pub monomial: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct MonomialArg {
    pub monomial: String,
}

/// Settings shared by all commands after validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub relations: Vec<String>,
    pub families: Vec<String>,
    pub window: Option<(i64, i64)>,
    pub orders: Option<(u32, u32)>,
    pub max_deg: u32,
    pub max_deg_cap: u32,
    pub probes: usize,
    pub seed: u64,
    pub i: i64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            relations: Vec::new(),
            families: Vec::new(),
            window: None,
            orders: None,
            max_deg: 30,
            max_deg_cap: 40,
            probes: 3,
            seed: 0,
            i: 0,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if let Some((lo, hi)) = self.window {
            if lo > hi {
                return Err(CliError::Usage(format!("empty window [{lo},{hi}]")));
            }
        }
        if self.max_deg > self.max_deg_cap {
            return Err(CliError::Usage(format!(
                "max-deg {} exceeds the cap {}",
                self.max_deg, self.max_deg_cap
            )));
        }
        if !(0..=1).contains(&self.i) {
            return Err(CliError::Usage(format!("--i must be 0 or 1, got {}", self.i)));
        }
        if !(1..=10).contains(&self.probes) {
            return Err(CliError::Usage(format!("--probes must lie in 1..=10, got {}", self.probes)));
        }
        Ok(())
    }
}

fn window_of(c: &Common) -> Option<(i64, i64)> {
    c.window.as_ref().map(|w| (w[0], w[1]))
}

/// The command's report text and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

impl Outcome {
    fn new(passed: bool, text: String) -> Self {
        Outcome {
            code: if passed { EXIT_PASS } else { EXIT_FAIL },
            text,
        }
    }
}

/// The three fixed probes followed by seeded random basis vectors of degree
/// at most 3 in `L0` or `L1`.
pub fn probe_set(n: usize, seed: u64) -> Vec<FockVector> {
    let mut out: Vec<FockVector> = default_probes().into_iter().take(n).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let shapes: [&[u32]; 7] = [&[], &[1], &[2], &[1, 1], &[3], &[2, 1], &[1, 1, 1]];
    while out.len() < n {
        let parts = shapes[rng.gen_range(0..shapes.len())].to_vec();
        let label = rng.gen_range(0..=1);
        let v = FockVector::basis(FockKey::new(parts, label));
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn report_json(r: &Report) -> Value {
    json!({
        "id": r.id,
        "status": if r.passed { "pass" } else { "fail" },
        "window": [r.window.0, r.window.1],
        "probes": r.probes,
        "checks": r.checks,
        "first_difference": r.counterexample,
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let mut ids = cfg.relations.clone();
    ids.sort();
    ids.dedup();
    for id in &ids {
        if !relation_ids().contains(&id.as_str()) {
            return Err(QvaError::UnknownRelation(id.clone()).into());
        }
    }
    if ids.is_empty() {
        return Err(CliError::Usage("select --suite or --relation".into()));
    }
    let probes = probe_set(cfg.probes, cfg.seed);
    let mut reports = Vec::new();
    for id in &ids {
        let r = match (id.as_str(), cfg.orders) {
            ("V4", Some(orders)) => associativity_suite(orders, &probes, cfg.window.unwrap_or((-8, 8)))?,
            _ => verify_relation(id, &probes, cfg.window)?,
        };
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let text = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{r}").unwrap();
            }
            let n = reports.iter().filter(|r| r.passed).count();
            writeln!(s, "summary passed={n} total={}", reports.len()).unwrap();
            s
        }
        Format::Json => {
            let doc = json!({
                "command": "verify",
                "seed": cfg.seed,
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                "passed": passed,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    Ok(Outcome::new(passed, text))
}

fn list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn cmd_characters(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let i = cfg.i;
    let q = character(family(if i == 0 { "W0qq" } else { "W1qq" })?, cfg.max_deg);
    let h = character(family(if i == 0 { "hat-L0" } else { "hat-L1" })?, cfg.max_deg);
    let sum = rr_sum_side(i as u32, cfg.max_deg);
    let prod = rr_product_side(i as u32, cfg.max_deg);
    let ok = series_eq(&[&q, &h, &sum, &prod]);
    let verdict = if ok { "MATCH" } else { "MISMATCH" };
    let text = match cfg.format {
        Format::Text => format!(
            "i={i} max_deg={}\nW{i}qq      {}\nhat-L{i}    {}\nsum_side   {}\nproduct    {}\n{verdict}\n",
            cfg.max_deg,
            list(&q),
            list(&h),
            list(&sum),
            list(&prod)
        ),
        Format::Json => format!(
            "{}\n",
            json!({"command": "characters", "i": i, "max_deg": cfg.max_deg, "quantum": q,
                   "principal": h, "sum_side": sum, "product_side": prod, "verdict": verdict})
        ),
    };
    Ok(Outcome::new(ok, text))
}

pub fn cmd_bijection(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let r = bijection_check(cfg.i, cfg.max_deg)?;
    let text = match cfg.format {
        Format::Text => {
            let c: Vec<u64> = r.source_counts.iter().map(|&n| n as u64).collect();
            format!("{r}\ncounts {}\n", list(&c))
        }
        Format::Json => format!(
            "{}\n",
            json!({"command": "bijection", "i": r.level, "max_deg": r.max_deg,
                   "source_counts": r.source_counts, "target_counts": r.target_counts,
                   "status": if r.passed() { "pass" } else { "fail" }, "reason": r.failure})
        ),
    };
    Ok(Outcome::new(r.passed(), text))
}

pub fn cmd_rank(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let mut text = String::new();
    let mut docs = Vec::new();
    let mut passed = true;
    for id in &cfg.families {
        let f = family(id)?;
        let r = family_rank(f, cfg.max_deg, cfg.window.unwrap_or((-4, 8)))?;
        passed &= r.passed();
        match cfg.format {
            Format::Text => {
                writeln!(text, "{r}").unwrap();
                for (d, n, k) in &r.per_degree {
                    writeln!(text, "  degree={d} members={n} rank={k}").unwrap();
                }
            }
            Format::Json => docs.push(json!({
                "family": r.family, "max_deg": r.max_deg, "cardinality": r.cardinality,
                "rank": r.rank, "per_degree": r.per_degree,
                "status": if r.passed() { "pass" } else { "fail" }})),
        }
    }
    if cfg.format == Format::Json {
        text = format!("{}\n", json!({"command": "rank", "families": docs}));
    }
    Ok(Outcome::new(passed, text))
}

pub fn cmd_reduce(spec: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let m: QVAMonomial = spec.parse()?;
    let comb = rewrite(&m)?;
    let (lo, hi) = cfg.window.unwrap_or((-12, 12));
    let mut ev = Evaluator::new(probe_set(cfg.probes, cfg.seed), lo, hi);
    let diff = evaluation_agrees(&m, &comb, &mut ev)?;
    let rendered = if comb.is_empty() {
        "0".to_string()
    } else {
        comb.iter()
            .map(|(t, c)| format!("({c}) {t}"))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let verdict = match &diff {
        None => "evaluation=equal".to_string(),
        Some(d) => format!("evaluation=DIFFERENT {d}"),
    };
    let text = match cfg.format {
        Format::Text => format!("{m} = {rendered}\n{verdict} window=[{lo},{hi}]\n"),
        Format::Json => format!(
            "{}\n",
            json!({"command": "reduce", "input": m.to_string(), "output": rendered,
                   "terms": comb.iter().map(|(t, c)| json!([t.to_string(), c.to_string()])).collect::<Vec<_>>(),
                   "evaluation_equal": diff.is_none(), "window": [lo, hi]})
        ),
    };
    Ok(Outcome::new(diff.is_none(), text))
}

pub fn cmd_diagram(spec: &str) -> Result<Outcome, CliError> {
    let m: QVAMonomial = spec.parse()?;
    let img = complete_diagram(&m)?;
    let d = Diagram::of(&m);
    Ok(Outcome::new(
        true,
        format!("{d}\nadded boxes: {}\ncompletes to {img}\n", d.added_boxes()),
    ))
}

pub fn cmd_list() -> Outcome {
    let mut s = String::from("relations:");
    for id in relation_ids() {
        write!(s, " {id}").unwrap();
    }
    s.push_str("\nfamilies:");
    for id in family_ids() {
        write!(s, " {id}").unwrap();
    }
    s.push('\n');
    Outcome::new(true, s)
}

/// Dispatch a parsed command line.
pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut cfg = RunConfig::default();
    match cli.command {
        Command::Verify(a) => {
            cfg.window = window_of(&a.common);
            cfg.format = a.common.format;
            cfg.probes = a.probes;
            cfg.seed = a.seed;
            cfg.orders = a.orders.map(|o| (o[0], o[1]));
            cfg.relations = a.relation;
            match a.suite.as_deref() {
                None => {}
                Some("core") => cfg.relations.extend(CORE_SUITE.map(String::from)),
                Some("all") => cfg.relations.extend(relation_ids().into_iter().map(String::from)),
                Some(other) => return Err(CliError::Usage(format!("unknown suite `{other}`"))),
            }
            cmd_verify(&cfg)
        }
        Command::Characters(a) => {
            cfg.i = a.i;
            cfg.max_deg = a.max_deg;
            cfg.format = a.common.format;
            cmd_characters(&cfg)
        }
        Command::Bijection(a) => {
            cfg.i = a.i;
            cfg.max_deg = a.max_deg;
            cfg.format = a.common.format;
            cmd_bijection(&cfg)
        }
        Command::Rank(a) => {
            cfg.families = if a.family == "all" {
                family_ids().into_iter().map(String::from).collect()
            } else {
                vec![a.family]
            };
            cfg.max_deg = a.max_deg;
            cfg.window = window_of(&a.common);
            cfg.format = a.common.format;
            cmd_rank(&cfg)
        }
        Command::Reduce(a) => {
            cfg.window = window_of(&a.common);
            cfg.format = a.common.format;
            cmd_reduce(&a.monomial, &cfg)
        }
        Command::Diagram(a) => cmd_diagram(&a.monomial),
        Command::List => Ok(cmd_list()),
    }
}
