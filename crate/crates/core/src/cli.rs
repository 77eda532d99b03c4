//! Command-line front end and output formats.
//!
//! Exit codes: 0 success, 1 rejected input, 2 internal invariant violation.

use crate::arith::{odd_primes_between, OddPrime};
use crate::error::Error;
use crate::lattice::{color_of, monochromatic_basis_traced};
use crate::solutions::{
    brute_force, enumerate, klein_orbits, mu_class_of, solve_class, two_squares, MuClass,
    SolutionQuadruplet, SolutionSet,
};
use crate::stats::{self, EstimateMode, Histogram, Interval, Statistic};
use crate::variants::{
    count_diff, count_sum, divisor_formula, Inequality, VariantConvention,
    ZeroHandling,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Method {
    #[default]
    Lattice,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantOp {
    Sum,
    Diff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Strict,
    Nonstrict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZeroArg {
    Require,
    Admit,
    Range,
}

#[derive(Parser, Debug)]
#[command(name = "windmill", version, about = "Decompositions p = ab + cd of odd primes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all (p+1)/2 solutions of p = ab + cd
    Enumerate(EnumerateArgs),
    /// Colour of Λ_mu(p) and the solution of its class
    Solve {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "mu")]
        mu: i64,
    },
    /// Colour of the monochromatic bases of Λ_mu(p)
    Color {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "mu")]
        mu: i64,
    },
    /// Write p ≡ 1 (mod 4) as a sum of two squares
    TwoSquares {
        #[arg(long = "p")]
        p: u64,
    },
    /// Projective statistics: histograms and proportions
    Stats(StatsArgs),
    /// Brute-force counts for n = ab + cd and n = ab - cd
    Variant(VariantArgs),
    /// Check the count law (and the brute-force oracle) over a range of primes
    Verify {
        #[arg(long = "p-max")]
        p_max: u64,
        #[arg(long = "oracle-max")]
        oracle_max: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long = "p")]
    p: u64,
    #[arg(long, value_enum, default_value_t)]
    method: Method,
    #[arg(long)]
    orbits: bool,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long)]
    trace: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long)]
    stat: String,
    #[arg(long = "p", conflicts_with_all = ["p_min", "p_max"])]
    p: Option<u64>,
    #[arg(long = "p-min")]
    p_min: Option<u64>,
    #[arg(long = "p-max")]
    p_max: Option<u64>,
    #[arg(long, requires = "seed", conflicts_with = "p")]
    samples: Option<u64>,
    #[arg(long, requires = "samples")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10)]
    bins: usize,
    #[arg(long)]
    interval: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct VariantArgs {
    #[arg(long, value_enum)]
    op: VariantOp,
    #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
    n: Option<u64>,
    #[arg(long = "n-max")]
    n_max: Option<u64>,
    #[arg(long, value_enum, requires = "zero")]
    convention: Option<ConventionArg>,
    #[arg(long, value_enum, requires = "convention")]
    zero: Option<ZeroArg>,
    #[arg(long = "compare-formula")]
    compare_formula: bool,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

/// Default sampling range for `stats --samples`.
const SAMPLE_RANGE: (u64, u64) = (100_000, 1_000_000);

enum Failure {
    User(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::User(format!("i/o error: {e}"))
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parse `argv` (program name first) and run, writing to stdout/stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "windmill: {}", line.trim_start_matches("error: "));
            return 1;
        }
    };
    let result = match cli.command {
        Command::Enumerate(args) => cmd_enumerate(&args, out),
        Command::Solve { p, mu } => cmd_solve(p, mu, out),
        Command::Color { p, mu } => cmd_color(p, mu, out),
        Command::TwoSquares { p } => cmd_two_squares(p, out),
        Command::Stats(args) => cmd_stats(&args, out),
        Command::Variant(args) => cmd_variant(&args, out, err),
        Command::Verify { p_max, oracle_max } => cmd_verify(p_max, oracle_max, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::User(msg)) => {
            let _ = writeln!(err, "windmill: {msg}");
            1
        }
        Err(Failure::Invariant(msg)) => {
            let _ = writeln!(err, "windmill: invariant violated: {msg}");
            2
        }
    }
}

fn prime(p: u64) -> std::result::Result<OddPrime, Failure> {
    Ok(OddPrime::new(p)?)
}

fn check_mu(p: OddPrime, mu: i64) -> CliResult {
    if mu < 0 || mu as u64 >= p.get() {
        return Err(Failure::User(format!("mu = {mu} is outside [0, {}]", p.get() - 1)));
    }
    Ok(())
}

/// `(mu_lo, mu_hi)` columns: the two members of a pair, or `0` / `inf`.
fn mu_columns(p: OddPrime, class: MuClass) -> (String, String) {
    match class {
        MuClass::Zero => ("0".into(), String::new()),
        MuClass::Infinity => ("inf".into(), String::new()),
        MuClass::Pair(lo) => (lo.to_string(), (p.get() - lo).to_string()),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    mu_lo: String,
    mu_hi: String,
    orbit_size: u8,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRow {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_lo: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_hi: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
    orbit_size: u8,
}

fn render_table(rows: &[(SolutionQuadruplet, u8)], total: usize) -> String {
    let w = rows
        .iter()
        .flat_map(|(q, _)| [q.a, q.b, q.c, q.d])
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    let k = total.to_string().len().max(2);
    let lead = 4 * w + 3;
    let mut s = String::new();
    let _ = writeln!(s, "{:>w$} {:>w$} {:>w$} {:>w$} | {:>k$}", "a", "b", "c", "d", "#O");
    let rule = format!("{}-+-{}\n", "-".repeat(lead), "-".repeat(k));
    s.push_str(&rule);
    for (q, size) in rows {
        let _ = writeln!(s, "{:>w$} {:>w$} {:>w$} {:>w$} | {:>k$}", q.a, q.b, q.c, q.d, size);
    }
    s.push_str(&rule);
    let _ = writeln!(s, "{} | {:>k$}", " ".repeat(lead), total);
    s
}

/// Serialise a solution set in table order.
///
/// With `orbits`, only the orbit representatives (`a >= b`, `c >= d`) are
/// listed. Every format carries the orbit size of each row.
pub fn format_solutions(
    set: &SolutionSet,
    orbits: bool,
    fmt: OutputFormat,
) -> crate::error::Result<Vec<u8>> {
    let p = set.p();
    let rows: Vec<(SolutionQuadruplet, u8)> = if orbits {
        klein_orbits(set)?.into_iter().map(|r| (r.representative, r.size)).collect()
    } else {
        set.iter().map(|q| (*q, q.orbit_size())).collect()
    };
    match fmt {
        OutputFormat::Table => Ok(render_table(&rows, set.len()).into_bytes()),
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            for (q, size) in &rows {
                let (mu_lo, mu_hi) = mu_columns(p, mu_class_of(p, q)?);
                let row = CsvRow { p: p.get(), a: q.a, b: q.b, c: q.c, d: q.d, mu_lo, mu_hi, orbit_size: *size };
                w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Parse(e.to_string()))
        }
        OutputFormat::Jsonl => {
            let mut buf = Vec::new();
            for (q, size) in &rows {
                let class = mu_class_of(p, q)?;
                let (mu_lo, mu_hi, mu) = match class {
                    MuClass::Pair(lo) => (Some(lo), Some(p.get() - lo), None),
                    other => (None, None, Some(other.to_string())),
                };
                let row = JsonRow { p: p.get(), a: q.a, b: q.b, c: q.c, d: q.d, mu_lo, mu_hi, mu, orbit_size: *size };
                serde_json::to_writer(&mut buf, &row).map_err(|e| Error::Parse(e.to_string()))?;
                buf.push(b'\n');
            }
            Ok(buf)
        }
    }
}

fn check_row(p: OddPrime, q: &SolutionQuadruplet, class_cols: (String, String), size: u8) -> crate::error::Result<()> {
    let class = mu_class_of(p, q)?;
    if mu_columns(p, class) != class_cols || q.orbit_size() != size {
        return Err(Error::Parse(format!("row {q} has inconsistent mu or orbit columns")));
    }
    Ok(())
}

/// Read back a full (non-orbit) csv or jsonl listing.
pub fn parse_solutions(data: &[u8], fmt: OutputFormat) -> crate::error::Result<SolutionSet> {
    let parse_err = |e: &dyn std::fmt::Display| Error::Parse(e.to_string());
    let mut p = None;
    let mut items = Vec::new();
    let mut accept = |row_p: u64, q: SolutionQuadruplet| -> crate::error::Result<OddPrime> {
        let prime = OddPrime::new(row_p)?;
        if *p.get_or_insert(prime) != prime {
            return Err(Error::Parse("rows mix different primes".into()));
        }
        items.push(q);
        Ok(prime)
    };
    match fmt {
        OutputFormat::Csv => {
            let mut r = csv::Reader::from_reader(data);
            for row in r.deserialize::<CsvRow>() {
                let row = row.map_err(|e| parse_err(&e))?;
                let q = SolutionQuadruplet::new(row.a, row.b, row.c, row.d);
                let prime = accept(row.p, q)?;
                check_row(prime, &q, (row.mu_lo, row.mu_hi), row.orbit_size)?;
            }
        }
        OutputFormat::Jsonl => {
            for line in data.split(|b| *b == b'\n').filter(|l| !l.is_empty()) {
                let row: JsonRow = serde_json::from_slice(line).map_err(|e| parse_err(&e))?;
                let q = SolutionQuadruplet::new(row.a, row.b, row.c, row.d);
                let prime = accept(row.p, q)?;
                let cols = match (row.mu_lo, row.mu_hi, row.mu) {
                    (Some(lo), Some(hi), None) => (lo.to_string(), hi.to_string()),
                    (None, None, Some(m)) => (m, String::new()),
                    _ => return Err(Error::Parse(format!("row {q} has malformed mu fields"))),
                };
                check_row(prime, &q, cols, row.orbit_size)?;
            }
        }
        OutputFormat::Table => return Err(Error::Parse("table output is not machine-readable".into())),
    }
    let p = p.ok_or_else(|| Error::Parse("no rows".into()))?;
    SolutionSet::new(p, items)
}

fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> CliResult {
    let p = prime(args.p)?;
    let brute = || -> std::result::Result<SolutionSet, Failure> {
        let items = brute_force(p.get())?;
        Ok(SolutionSet::new(p, items)?)
    };
    let set = match args.method {
        Method::Lattice => enumerate(p)?,
        Method::Brute => brute()?,
        Method::Both => {
            let lattice = enumerate(p)?;
            if lattice != brute()? {
                return Err(Failure::Invariant(format!("lattice and brute-force solutions differ for p = {p}")));
            }
            lattice
        }
    };
    if let Some(path) = &args.trace {
        let mut text = String::new();
        for mu in 2..=p.get() as i64 - 2 {
            monochromatic_basis_traced(p, mu, &mut |step| {
                let _ = writeln!(text, "p={p} mu={mu} {step}");
            })?;
        }
        std::fs::write(path, text)?;
    }
    let bytes = format_solutions(&set, args.orbits, args.format)?;
    match &args.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => out.write_all(&bytes)?,
    }
    Ok(())
}

fn cmd_color(p: u64, mu: i64, out: &mut dyn Write) -> CliResult {
    let p = prime(p)?;
    check_mu(p, mu)?;
    let color = color_of(p, mu)?;
    writeln!(out, "{}", color.map_or("none", |c| c.name()))?;
    Ok(())
}

fn cmd_solve(p: u64, mu: i64, out: &mut dyn Write) -> CliResult {
    let p = prime(p)?;
    check_mu(p, mu)?;
    let color = color_of(p, mu)?;
    writeln!(out, "p={p} mu={mu} color={}", color.map_or("none", |c| c.name()))?;
    let class = match mu as u64 {
        0 => Some(MuClass::Zero),
        m if m == 1 || m == p.get() - 1 => None,
        m => Some(MuClass::pair(p, m)?),
    };
    match class {
        Some(class) => {
            let q = solve_class(p, class)?;
            let (lo, hi) = mu_columns(p, class);
            let members = if hi.is_empty() { lo } else { format!("{lo},{hi}") };
            writeln!(out, "class={{{members}}} solution={} {} {} {}", q.a, q.b, q.c, q.d)?;
        }
        None => writeln!(out, "mu = ±1 (mod p) carries no solution")?,
    }
    Ok(())
}

fn cmd_two_squares(p: u64, out: &mut dyn Write) -> CliResult {
    let p = prime(p)?;
    let (a, c) = two_squares(p)?;
    writeln!(out, "{p} = {a}^2 + {c}^2")?;
    Ok(())
}

/// `x` with 12 significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn write_histogram(h: &Histogram, fmt: OutputFormat, out: &mut dyn Write) -> CliResult {
    let bins = h.counts.iter().enumerate().map(|(i, c)| (i, h.edges[i], h.edges[i + 1], *c));
    match fmt {
        OutputFormat::Table => {
            writeln!(out, "{:>4}  {:>16}  {:>16}  {:>8}", "bin", "lo", "hi", "count")?;
            for (i, lo, hi, c) in bins {
                writeln!(out, "{i:>4}  {:>16}  {:>16}  {c:>8}", format_sig(lo), format_sig(hi))?;
            }
            writeln!(out, "total={} excluded={}", h.total, h.excluded)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "bin,lo,hi,count")?;
            for (i, lo, hi, c) in bins {
                writeln!(out, "{i},{},{},{c}", format_sig(lo), format_sig(hi))?;
            }
        }
        OutputFormat::Jsonl => {
            for (i, lo, hi, c) in bins {
                writeln!(out, "{{\"bin\":{i},\"lo\":{},\"hi\":{},\"count\":{c}}}", format_sig(lo), format_sig(hi))?;
            }
        }
    }
    Ok(())
}

fn cmd_stats(args: &StatsArgs, out: &mut dyn Write) -> CliResult {
    let stat: Statistic = args.stat.parse()?;
    let interval = args.interval.as_deref().map(str::parse::<Interval>).transpose()?;
    let mode = if let (Some(samples), Some(seed)) = (args.samples, args.seed) {
        let p_min = args.p_min.unwrap_or(SAMPLE_RANGE.0);
        let p_max = args.p_max.unwrap_or(SAMPLE_RANGE.1);
        EstimateMode::Sampling { samples, seed, p_min, p_max }
    } else if let Some(p) = args.p {
        let p = prime(p)?.get();
        EstimateMode::Exhaustive { p_min: p, p_max: p }
    } else if let (Some(p_min), Some(p_max)) = (args.p_min, args.p_max) {
        EstimateMode::Exhaustive { p_min, p_max }
    } else {
        return Err(Failure::User("stats needs --p, --p-min/--p-max or --samples/--seed".into()));
    };

    let Some(interval) = interval else {
        let EstimateMode::Exhaustive { p_min, p_max } = mode else {
            return Err(Failure::User("sampling mode needs --interval".into()));
        };
        let primes = odd_primes_between(p_min, p_max);
        let sets = primes.into_par_iter().map(enumerate).collect::<crate::error::Result<Vec<_>>>()?;
        let h = stats::histogram(stat, sets.iter().flat_map(|s| s.iter()), args.bins)?;
        return write_histogram(&h, args.format, out);
    };

    let e = stats::estimate(mode, stat, interval)?;
    let prop = format_sig(e.proportion);
    match args.format {
        OutputFormat::Table => writeln!(
            out,
            "stat={stat} interval=({}, {}) proportion={prop} hits={} evaluated={} discarded={}",
            interval.lo, interval.hi, e.hits, e.evaluated, e.discarded
        )?,
        OutputFormat::Csv => {
            writeln!(out, "stat,lo,hi,proportion,hits,evaluated,discarded")?;
            writeln!(out, "{stat},{},{},{prop},{},{},{}", interval.lo, interval.hi, e.hits, e.evaluated, e.discarded)?;
        }
        OutputFormat::Jsonl => writeln!(
            out,
            "{}",
            serde_json::json!({
                "stat": stat.name(),
                "lo": interval.lo.to_string(),
                "hi": interval.hi.to_string(),
                "proportion": prop,
                "hits": e.hits,
                "evaluated": e.evaluated,
                "discarded": e.discarded,
            })
        )?,
    }
    Ok(())
}

struct VariantRow {
    n: u64,
    convention: VariantConvention,
    count: u64,
    formula: Option<u64>,
}

fn cmd_variant(args: &VariantArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let conventions: Vec<VariantConvention> = match (args.convention, args.zero) {
        (Some(ineq), Some(zero)) => {
            let inequality = match ineq {
                ConventionArg::Strict => Inequality::Strict,
                ConventionArg::Nonstrict => Inequality::NonStrict,
            };
            let zero = match zero {
                ZeroArg::Require => ZeroHandling::Require,
                ZeroArg::Admit => ZeroHandling::Admit,
                ZeroArg::Range => ZeroHandling::Range,
            };
            vec![VariantConvention::new(inequality, zero)]
        }
        _ if args.compare_formula => VariantConvention::ALL.to_vec(),
        _ => return Err(Failure::User("--convention and --zero are required".into())),
    };
    if args.compare_formula && args.op == VariantOp::Sum {
        return Err(Failure::User("the divisor formula applies to --op diff only".into()));
    }
    let ns: Vec<u64> = match (args.n, args.n_max) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => return Err(Failure::User("--n or --n-max is required".into())),
    };

    let rows = ns
        .par_iter()
        .map(|&n| {
            let formula = if args.compare_formula { Some(divisor_formula(n)?) } else { None };
            conventions
                .iter()
                .map(|&convention| {
                    let count = match args.op {
                        VariantOp::Sum => count_sum(n, convention)?,
                        VariantOp::Diff => count_diff(n, convention)?,
                    };
                    Ok(VariantRow { n, convention, count, formula })
                })
                .collect::<crate::error::Result<Vec<_>>>()
        })
        .collect::<crate::error::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();

    let flag = |r: &VariantRow| match r.formula {
        Some(f) if f == r.count => "yes",
        Some(_) => "no",
        None => "",
    };
    match args.format {
        OutputFormat::Table => {
            write!(out, "{:>6}  {:<18}  {:>10}", "n", "convention", "count")?;
            if args.compare_formula {
                write!(out, "  {:>10}  match", "formula")?;
            }
            writeln!(out)?;
            for r in &rows {
                write!(out, "{:>6}  {:<18}  {:>10}", r.n, r.convention.to_string(), r.count)?;
                if let Some(f) = r.formula {
                    write!(out, "  {f:>10}  {}", flag(r))?;
                }
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            write!(out, "n,convention,count")?;
            if args.compare_formula {
                write!(out, ",formula,match")?;
            }
            writeln!(out)?;
            for r in &rows {
                write!(out, "{},{},{}", r.n, r.convention, r.count)?;
                if let Some(f) = r.formula {
                    write!(out, ",{f},{}", flag(r))?;
                }
                writeln!(out)?;
            }
        }
        OutputFormat::Jsonl => {
            for r in &rows {
                let mut obj = serde_json::json!({
                    "n": r.n,
                    "convention": r.convention.to_string(),
                    "count": r.count,
                });
                if let Some(f) = r.formula {
                    obj["formula"] = f.into();
                    obj["match"] = (f == r.count).into();
                }
                writeln!(out, "{obj}")?;
            }
        }
    }

    if args.compare_formula {
        let n_max = ns.last().copied().unwrap_or(0);
        let matching: Vec<_> = conventions
            .iter()
            .filter(|c| rows.iter().filter(|r| r.convention == **c).all(|r| r.formula == Some(r.count)))
            .map(|c| c.to_string())
            .collect();
        let summary = if matching.is_empty() {
            format!("no convention matches the divisor formula on all n <= {n_max}")
        } else {
            format!("conventions matching the divisor formula on all n <= {n_max}: {}", matching.join(", "))
        };
        if args.format == OutputFormat::Table {
            writeln!(out, "{summary}")?;
        } else {
            writeln!(err, "{summary}")?;
        }
    }
    Ok(())
}

/// Outcome of a batch check of the count law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub primes_checked: usize,
    pub oracle_checked: usize,
    /// Smallest failing prime and the reason.
    pub first_failure: Option<(u64, String)>,
}

/// For every prime `p <= p_max`: `(p + 1) / 2` valid, distinct solutions
/// closed under the Klein action; for `p <= oracle_max` also equality with
/// the brute-force search.
pub fn verify(p_max: u64, oracle_max: u64) -> crate::error::Result<VerifySummary> {
    if oracle_max > p_max {
        return Err(Error::OutOfRange { value: oracle_max as i128, expected: "oracle_max <= p_max" });
    }
    let primes = odd_primes_between(3, p_max);
    let failures: Vec<(u64, String)> = primes
        .par_iter()
        .filter_map(|&p| {
            let check = || -> crate::error::Result<()> {
                let set = enumerate(p)?;
                klein_orbits(&set)?;
                if p.get() <= oracle_max && brute_force(p.get())? != set.items() {
                    return Err(Error::Invariant("differs from brute force".into()));
                }
                Ok(())
            };
            check().err().map(|e| (p.get(), e.to_string()))
        })
        .collect();
    let oracle_checked = primes.iter().filter(|p| p.get() <= oracle_max).count();
    Ok(VerifySummary {
        primes_checked: primes.len(),
        oracle_checked,
        first_failure: failures.into_iter().min(),
    })
}

fn cmd_verify(p_max: u64, oracle_max: Option<u64>, out: &mut dyn Write) -> CliResult {
    let oracle_max = oracle_max.unwrap_or(p_max.min(1000));
    if oracle_max > p_max {
        return Err(Failure::User(format!("--oracle-max {oracle_max} exceeds --p-max {p_max}")));
    }
    let summary = verify(p_max, oracle_max)?;
    writeln!(
        out,
        "checked {} primes <= {p_max}; {} against brute force (<= {oracle_max})",
        summary.primes_checked, summary.oracle_checked
    )?;
    match summary.first_failure {
        None => {
            writeln!(out, "ok")?;
            Ok(())
        }
        Some((p, reason)) => Err(Failure::Invariant(format!("first failure at p = {p}: {reason}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("windmill").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["enumerate", "--p", "29", "--orbits"]).0, 0);
        let (code, _, err) = run_capture(&["enumerate", "--p", "30"]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
        assert_eq!(run_capture(&["enumerate", "--p", "2"]).0, 1);
        assert_eq!(run_capture(&["enumerate"]).0, 1);
        assert_eq!(run_capture(&["color", "--p", "29", "--mu", "29"]).0, 1);
        assert_eq!(run_capture(&["two-squares", "--p", "31"]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn two_squares_output() {
        assert_eq!(run_capture(&["two-squares", "--p", "29"]), (0, "29 = 5^2 + 2^2\n".into(), String::new()));
    }

    #[test]
    fn color_and_solve_output() {
        assert_eq!(run_capture(&["color", "--p", "29", "--mu", "12"]).1, "black\n");
        assert_eq!(run_capture(&["color", "--p", "29", "--mu", "17"]).1, "white\n");
        assert_eq!(run_capture(&["color", "--p", "29", "--mu", "1"]).1, "none\n");
        let (_, out, _) = run_capture(&["solve", "--p", "29", "--mu", "17"]);
        assert_eq!(out, "p=29 mu=17 color=white\nclass={12,17} solution=5 5 2 2\n");
        let (_, out, _) = run_capture(&["solve", "--p", "29", "--mu", "0"]);
        assert_eq!(out, "p=29 mu=0 color=none\nclass={0} solution=29 1 0 0\n");
        let (code, out, _) = run_capture(&["solve", "--p", "29", "--mu", "28"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("carries no solution\n"));
    }

    #[test]
    fn small_table() {
        let set = enumerate(OddPrime::new(3).unwrap()).unwrap();
        let table = String::from_utf8(format_solutions(&set, false, OutputFormat::Table).unwrap()).unwrap();
        assert_eq!(table, "a b c d | #O\n--------+---\n3 1 0 0 |  2\n1 3 0 0 |  2\n--------+---\n        |  2\n");
    }

    #[test]
    fn csv_and_jsonl_shapes() {
        let set = enumerate(OddPrime::new(29).unwrap()).unwrap();
        let csv = String::from_utf8(format_solutions(&set, false, OutputFormat::Csv).unwrap()).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "p,a,b,c,d,mu_lo,mu_hi,orbit_size");
        assert_eq!(lines.len(), 16);
        assert_eq!(lines[1], "29,29,1,0,0,0,,2");
        assert!(lines.contains(&"29,5,5,2,2,12,17,1"));
        assert!(!csv.contains('\r'));
        let jsonl = String::from_utf8(format_solutions(&set, false, OutputFormat::Jsonl).unwrap()).unwrap();
        assert_eq!(jsonl.lines().next().unwrap(), r#"{"p":29,"a":29,"b":1,"c":0,"d":0,"mu":"0","orbit_size":2}"#);
        assert!(jsonl.contains(r#"{"p":29,"a":1,"b":29,"c":0,"d":0,"mu":"inf","orbit_size":2}"#));
        assert!(jsonl.contains(r#"{"p":29,"a":5,"b":5,"c":2,"d":2,"mu_lo":12,"mu_hi":17,"orbit_size":1}"#));
    }

    #[test]
    fn round_trips() {
        for p in [3, 5, 29, 31, 997] {
            let set = enumerate(OddPrime::new(p).unwrap()).unwrap();
            for fmt in [OutputFormat::Csv, OutputFormat::Jsonl] {
                let bytes = format_solutions(&set, false, fmt).unwrap();
                assert_eq!(parse_solutions(&bytes, fmt).unwrap(), set);
            }
        }
    }

    #[test]
    fn parse_rejects_tampering() {
        let bad = b"p,a,b,c,d,mu_lo,mu_hi,orbit_size\n5,5,1,0,0,0,,2\n5,1,5,0,0,inf,,2\n5,2,2,1,1,3,2,1\n";
        assert!(parse_solutions(bad, OutputFormat::Csv).is_err());
        let short = b"p,a,b,c,d,mu_lo,mu_hi,orbit_size\n5,5,1,0,0,0,,2\n";
        assert!(parse_solutions(short, OutputFormat::Csv).is_err());
        assert!(parse_solutions(b"{\"p\":5}\n", OutputFormat::Jsonl).is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.4), "0.400000000000");
        assert_eq!(format_sig(1.0 / 15.0), "0.0666666666667");
        assert_eq!(format_sig(12.5), "12.5000000000");
        assert_eq!(format_sig(0.0), "0");
    }

    #[test]
    fn verify_small() {
        let s = verify(100, 100).unwrap();
        assert_eq!((s.primes_checked, s.oracle_checked, s.first_failure), (24, 24, None));
        assert!(verify(3, 5).is_err());
        let (code, out, _) = run_capture(&["verify", "--p-max", "3", "--oracle-max", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("checked 1 primes"));
    }
}
