//! The `anticode` command line.
//!
//! [`run`] does all the work so it can be driven from tests; `main` only
//! wires it to the process streams.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anticode_core::anticode::{self as ac, Optimality};
use anticode_core::error::Error;
use anticode_core::invariants::{self, big_json, InvariantTable, LINEAR_EXTENSION};
use anticode_core::modmat::DEFAULT_ELEMENT_CAP;
use anticode_core::oracle::{self, DEFAULT_CENSUS_CAP};
use anticode_core::verify::{self, CheckOutcome};
use anticode_core::wcomp::{self, WeakComposition};
use anticode_core::{ChainRingParams, Code, Metric};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "anticode", version, about = "Weak-composition lattices and Lee-metric anticodes over Z/p^sZ")]
pub struct Cli {
    /// Output format. Defaults to json (dot for `lattice hasse`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Enumeration cap. Defaults to 1000000 elements, or 729 for
    /// submodule censuses.
    #[arg(long, global = true, env = "ANTICODE_CAP")]
    pub cap: Option<u128>,

    /// Seed for sampled verification.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Explore the lattice Δ_L(n).
    Lattice {
        #[arg(long)]
        parts: usize,
        #[arg(long)]
        sum: usize,
        action: LatticeAction,
    },
    /// Analyze the code spanned by a matrix file.
    Code {
        path: PathBuf,
        action: CodeAction,
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
    },
    /// Binomial moments, weight distributions and R-weights of a code.
    Invariants {
        path: PathBuf,
        action: InvariantsAction,
    },
    /// Run the oracle suites.
    Verify {
        scope: Scope,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        parts: Option<usize>,
        #[arg(long)]
        sum: Option<usize>,
        /// Check only this many codes, drawn with `--seed`.
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeAction {
    Enum,
    Hasse,
    Mobius,
    Covers,
    Chains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CodeAction {
    Analyze,
    Dual,
    Distance,
    Optimal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantsAction {
    /// Binomial moments B.
    Moments,
    /// Weight distribution W.
    Distribution,
    /// Both B and W.
    Table,
    Rweights,
    Ghw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Lattice,
    Counting,
    Anticodes,
    Invariants,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Hamming,
    Homogeneous,
    Lee,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Hamming => Metric::Hamming,
            MetricArg::Homogeneous => Metric::Homogeneous,
            MetricArg::Lee => Metric::Lee,
        }
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Inconsistent(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

/// Parses `args` (including the program name), runs the command and
/// writes to the given streams. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "anticode: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Lattice { parts, sum, action } => lattice(cli, *parts, *sum, *action),
        Command::Code { path, action, metric } => code(cli, path, *action, metric.map(Metric::from)),
        Command::Invariants { path, action } => invariants_cmd(cli, path, *action),
        Command::Verify { scope, p, s, n, parts, sum, sample } => {
            verify_cmd(cli, *scope, (*p, *s, *n), (*parts, *sum), *sample)
        }
    }
}

fn element_cap(cli: &Cli) -> u128 {
    cli.cap.unwrap_or(DEFAULT_ELEMENT_CAP)
}

fn census_cap(cli: &Cli) -> u128 {
    cli.cap.unwrap_or(DEFAULT_CENSUS_CAP)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn unsupported(format: Format, what: &str) -> Failure {
    Failure::usage(format!("format {format:?} is not available for {what}").to_lowercase())
}

fn parts_csv(a: &WeakComposition) -> String {
    a.parts().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn lattice(cli: &Cli, len: usize, n: usize, action: LatticeAction) -> Outcome {
    if len == 0 {
        return Err(Failure::usage("--parts must be at least 1"));
    }
    let cap = element_cap(cli);
    let default = if action == LatticeAction::Hasse { Format::Dot } else { Format::Json };
    let format = cli.format.unwrap_or(default);
    let elements = wcomp::enumerate_capped(len, n, cap)?;
    match action {
        LatticeAction::Enum => match format {
            Format::Json => Ok(json_text(&json!(elements))),
            Format::Text => Ok(elements.iter().map(|a| format!("{a}\n")).collect()),
            Format::Csv => Ok(elements.iter().map(|a| format!("{}\n", parts_csv(a))).collect()),
            Format::Dot => Err(unsupported(format, "lattice enum")),
        },
        LatticeAction::Hasse => match format {
            Format::Dot => Ok(wcomp::hasse_dot(len, n, cap)?),
            Format::Json => {
                let edges: Vec<Value> = elements
                    .iter()
                    .flat_map(|a| a.covers().into_iter().map(move |b| json!([a, b])))
                    .collect();
                Ok(json_text(&json!({"nodes": elements, "edges": edges})))
            }
            _ => Err(unsupported(format, "lattice hasse")),
        },
        LatticeAction::Mobius => {
            let mut rows = Vec::new();
            for a in &elements {
                for b in &elements {
                    if a.dominated_by(b)? {
                        rows.push((a, b, wcomp::mobius(a, b)?));
                    }
                }
            }
            match format {
                Format::Json => Ok(json_text(&Value::Array(
                    rows.iter().map(|(a, b, m)| json!({"a": a, "b": b, "mu": m})).collect(),
                ))),
                Format::Csv => {
                    let mut s = String::from("a;b;mu\n");
                    for (a, b, m) in rows {
                        let _ = writeln!(s, "{};{};{m}", parts_csv(a), parts_csv(b));
                    }
                    Ok(s)
                }
                Format::Text => Ok(rows.iter().map(|(a, b, m)| format!("mu({a}, {b}) = {m}\n")).collect()),
                Format::Dot => Err(unsupported(format, "lattice mobius")),
            }
        }
        LatticeAction::Covers => match format {
            Format::Json => Ok(json_text(&Value::Array(
                elements.iter().map(|a| json!({"a": a, "covers": a.covers()})).collect(),
            ))),
            Format::Csv => {
                let mut s = String::from("a;b\n");
                for a in &elements {
                    for b in a.covers() {
                        let _ = writeln!(s, "{};{}", parts_csv(a), parts_csv(&b));
                    }
                }
                Ok(s)
            }
            Format::Text => Ok(elements
                .iter()
                .map(|a| {
                    let ups: Vec<String> = a.covers().iter().map(ToString::to_string).collect();
                    format!("{a} -> {}\n", ups.join(" "))
                })
                .collect()),
            Format::Dot => Err(unsupported(format, "lattice covers")),
        },
        LatticeAction::Chains => {
            let expected = wcomp::maximal_chain_length(len, n);
            let mut count: u64 = 0;
            let mut uniform = true;
            for chain in wcomp::maximal_chains(len, n, cap)? {
                count += 1;
                uniform &= chain.len() == expected + 1;
            }
            if !uniform {
                return Err(Error::Inconsistent(format!("maximal chains of Δ_{len}({n}) differ in length")).into());
            }
            match format {
                Format::Json => Ok(json_text(&json!({
                    "parts": len, "sum": n, "chains": count, "length": expected, "uniform": uniform
                }))),
                Format::Text => Ok(format!("all maximal chains length {expected} ({count} chains)\n")),
                _ => Err(unsupported(format, "lattice chains")),
            }
        }
    }
}

fn read_code(path: &PathBuf) -> Result<Code, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Code::parse(&text)?)
}

fn metrics_for(code: &Code, metric: Option<Metric>) -> Vec<Metric> {
    match metric {
        Some(m) => vec![m],
        None => Metric::ALL
            .into_iter()
            .filter(|&m| m != Metric::Lee || code.params().p() != 2)
            .collect(),
    }
}

fn code(cli: &Cli, path: &PathBuf, action: CodeAction, metric: Option<Metric>) -> Outcome {
    let code = read_code(path)?;
    let cap = element_cap(cli);
    let format = cli.format.unwrap_or(Format::Json);
    match action {
        CodeAction::Analyze => {
            let report = code.report(cap)?;
            if report.support_subtype.iter().sum::<usize>() != report.n {
                return Err(Error::Inconsistent("support subtype does not sum to n".into()).into());
            }
            match format {
                Format::Json => Ok(json_text(&serde_json::to_value(&report).expect("report serializes"))),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "ring: Z/{}^{}", report.p, report.s);
                    let _ = writeln!(s, "length: {}", report.n);
                    let _ = writeln!(s, "subtype: {:?}", report.subtype);
                    let _ = writeln!(s, "support subtype: {:?}", report.support_subtype);
                    let _ = writeln!(s, "rank: {} (free rank {})", report.rank, report.free_rank);
                    let _ = writeln!(s, "R-dimension: {}/{}", report.k_times_s, report.s);
                    for (name, e) in &report.distances {
                        let min = e.min.map_or("-".to_string(), |m| m.to_string());
                        let _ = writeln!(s, "{name}: min {min}, max {}", e.max);
                    }
                    Ok(s)
                }
                _ => Err(unsupported(format, "code analyze")),
            }
        }
        CodeAction::Dual => {
            let dual = code.dual();
            match format {
                Format::Text => Ok(dual.to_string()),
                Format::Json => {
                    let p = dual.params();
                    Ok(json_text(&json!({
                        "p": p.p(), "s": p.s(), "n": dual.len(),
                        "rows": dual.generator().rows(),
                        "subtype": dual.subtype(),
                    })))
                }
                _ => Err(unsupported(format, "code dual")),
            }
        }
        CodeAction::Distance => {
            let mut map = serde_json::Map::new();
            for m in metrics_for(&code, metric) {
                map.insert(m.name().into(), serde_json::to_value(code.weight_extremes(m, cap)?).expect("serializes"));
            }
            match format {
                Format::Json => Ok(json_text(&Value::Object(map))),
                Format::Text => Ok(map
                    .iter()
                    .map(|(k, v)| format!("{k}: min {}, max {}\n", v["min"], v["max"]))
                    .collect()),
                _ => Err(unsupported(format, "code distance")),
            }
        }
        CodeAction::Optimal => {
            let verdicts = metrics_for(&code, metric)
                .into_iter()
                .map(|m| ac::optimality(&code, m, cap))
                .collect::<Result<Vec<Optimality>, Error>>()?;
            match format {
                Format::Json => Ok(json_text(&serde_json::to_value(&verdicts).expect("serializes"))),
                Format::Text => Ok(verdicts
                    .iter()
                    .map(|v| format!("{}: {} (bound {}, max weight {})\n", v.metric, v.optimal, v.bound, v.max_weight))
                    .collect()),
                _ => Err(unsupported(format, "code optimal")),
            }
        }
    }
}

fn table_csv(table: &InvariantTable, columns: (bool, bool)) -> String {
    let mut s = String::from("a;j");
    if columns.0 {
        s.push_str(";B");
    }
    if columns.1 {
        s.push_str(";W");
    }
    s.push('\n');
    for (a, j, b, w) in table.rows() {
        let _ = write!(s, "{};{j}", parts_csv(a));
        if columns.0 {
            let _ = write!(s, ";{b}");
        }
        if columns.1 {
            let _ = write!(s, ";{w}");
        }
        s.push('\n');
    }
    s
}

fn table_json(table: &InvariantTable, columns: (bool, bool)) -> Value {
    let mut v = table.to_json();
    let entries: Vec<Value> = table
        .rows()
        .map(|(a, j, b, w)| {
            let mut e = json!({"a": a, "j": j});
            if columns.0 {
                e["B"] = big_json(b);
            }
            if columns.1 {
                e["W"] = big_json(w);
            }
            e
        })
        .collect();
    v["entries"] = Value::Array(entries);
    v
}

fn invariants_cmd(cli: &Cli, path: &PathBuf, action: InvariantsAction) -> Outcome {
    let code = read_code(path)?;
    let cap = census_cap(cli);
    let format = cli.format.unwrap_or(Format::Json);
    match action {
        InvariantsAction::Moments | InvariantsAction::Distribution | InvariantsAction::Table => {
            let table = InvariantTable::compute(&code, cap)?;
            table.check_identities()?;
            let columns = match action {
                InvariantsAction::Moments => (true, false),
                InvariantsAction::Distribution => (false, true),
                _ => (true, true),
            };
            match format {
                Format::Csv => Ok(table_csv(&table, columns)),
                Format::Json => Ok(json_text(&table_json(&table, columns))),
                _ => Err(unsupported(format, "invariant tables")),
            }
        }
        InvariantsAction::Rweights => {
            let k = code.rank();
            let mut d = Vec::with_capacity(k);
            let mut free = Vec::with_capacity(k);
            let mut minimal = Vec::with_capacity(k);
            for r in 1..=k {
                d.push(invariants::r_weight(&code, r, cap.max(DEFAULT_ELEMENT_CAP))?);
                free.push(invariants::r_weight_free(&code, r, cap.max(DEFAULT_ELEMENT_CAP))?);
                minimal.push(invariants::minimal_valid_profiles(&code, r, cap.max(DEFAULT_ELEMENT_CAP))?);
            }
            for w in d.windows(2) {
                if w[0].linear_cmp(&w[1])? == std::cmp::Ordering::Greater {
                    return Err(Error::Inconsistent(format!("d_r decreases: {} then {}", w[0], w[1])).into());
                }
            }
            match format {
                Format::Json => Ok(json_text(&json!({
                    "linear_extension": LINEAR_EXTENSION,
                    "d_r": d,
                    "d_r_free": free,
                    "minimal": minimal,
                }))),
                Format::Text => Ok(d
                    .iter()
                    .zip(&free)
                    .enumerate()
                    .map(|(i, (a, f))| format!("r={}: d_r = {a}, d_r^free = {f}\n", i + 1))
                    .collect()),
                Format::Csv => {
                    let mut s = String::from("r;d_r;d_r_free\n");
                    for (i, (a, f)) in d.iter().zip(&free).enumerate() {
                        let _ = writeln!(s, "{};{};{}", i + 1, parts_csv(a), parts_csv(f));
                    }
                    Ok(s)
                }
                Format::Dot => Err(unsupported(format, "invariants rweights")),
            }
        }
        InvariantsAction::Ghw => {
            let mut values = Vec::new();
            for r in 1..=code.rank() {
                let fast = invariants::ghw(&code, r, cap.max(DEFAULT_ELEMENT_CAP))?;
                // Cross-check by census when the code is small enough.
                if code.cardinality().is_some_and(|c| c <= cap) && code.params().p() != 2 {
                    let brute = verify::min_support_of_rank(&code, r, cap)?;
                    if brute != fast {
                        return Err(Error::Inconsistent(format!("ghw r={r}: {fast} vs census {brute}")).into());
                    }
                }
                values.push(fast);
            }
            match format {
                Format::Json => Ok(json_text(&json!({ "ghw": values }))),
                Format::Text => Ok(values.iter().enumerate().map(|(i, v)| format!("r={}: {v}\n", i + 1)).collect()),
                Format::Csv => Ok(std::iter::once("r;ghw\n".to_string())
                    .chain(values.iter().enumerate().map(|(i, v)| format!("{};{v}\n", i + 1)))
                    .collect()),
                Format::Dot => Err(unsupported(format, "invariants ghw")),
            }
        }
    }
}

fn verify_cmd(
    cli: &Cli,
    scope: Scope,
    ring: (Option<u64>, Option<u32>, Option<usize>),
    lattice: (Option<usize>, Option<usize>),
    sample: Option<usize>,
) -> Outcome {
    let cap = census_cap(cli);
    let format = cli.format.unwrap_or(Format::Json);
    let ring_params = || -> Result<(ChainRingParams, usize), Failure> {
        match ring {
            (Some(p), Some(s), Some(n)) => Ok((ChainRingParams::new(p, s)?, n)),
            _ => Err(Failure::usage(format!("{scope:?} verification needs --p, --s and --n").to_lowercase())),
        }
    };
    let codes = |params: ChainRingParams, n: usize| -> Result<Vec<Code>, Failure> {
        let mut all = oracle::enumerate_codes(n, params, cap)?;
        if let Some(k) = sample {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            all.shuffle(&mut rng);
            all.truncate(k);
        }
        Ok(all)
    };

    let mut suites: Vec<(&str, Vec<CheckOutcome>)> = Vec::new();
    if matches!(scope, Scope::Lattice | Scope::All) {
        let (len, n) = match lattice {
            (Some(l), Some(n)) => (l, n),
            _ if scope == Scope::All => {
                let (params, n) = ring_params()?;
                (params.s() as usize + 1, n)
            }
            _ => return Err(Failure::usage("lattice verification needs --parts and --sum")),
        };
        suites.push(("lattice", verify::lattice(len, n, cap.max(oracle::DEFAULT_POSET_CAP))?));
    }
    if matches!(scope, Scope::Counting | Scope::All) {
        let (params, n) = ring_params()?;
        suites.push(("counting", verify::counting(params, n, cap)?));
    }
    if matches!(scope, Scope::Anticodes | Scope::All) {
        let (params, n) = ring_params()?;
        suites.push(("anticodes", verify::anticodes_on(params, n, &codes(params, n)?, cap)?));
    }
    if matches!(scope, Scope::Invariants | Scope::All) {
        let (params, n) = ring_params()?;
        suites.push(("invariants", verify::invariants_on(params, n, &codes(params, n)?, cap)?));
    }

    let passed = suites.iter().all(|(_, c)| verify::all_passed(c));
    let text = match format {
        Format::Json => json_text(&json!({
            "passed": passed,
            "suites": suites.iter().map(|(name, checks)| json!({"suite": name, "checks": checks})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            for (name, checks) in &suites {
                for c in checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "{tag} {name}/{} ({} cases)", c.name, c.cases);
                    if let Some(cx) = &c.counterexample {
                        for line in cx.lines() {
                            let _ = writeln!(s, "    {line}");
                        }
                    }
                }
            }
            s
        }
        _ => return Err(unsupported(format, "verify")),
    };
    if passed {
        Ok(text)
    } else {
        Err(Failure { code: EXIT_INTERNAL, message: format!("verification failed\n{text}") })
    }
}
