//! Command-line frontend.
//!
//! Eight subcommands expose the library over files and pipes: `tau-table`,
//! `relations`, `span-dim`, `check-theorem`, `as-class`, `build-bundle`,
//! `classify-primes`, and `finiteness-demo`. Output is deterministic
//! (fixed row orderings, normalized rationals) in `text`, `csv`, or `json`
//! form; floats appear only behind `--float` as a sanity channel.
//!
//! Exit codes:
//! - 0: success / all consistency checks passed,
//! - 1: an internal consistency check failed (a proved identity did not
//!   hold on the computed data — a tripwire for implementation bugs),
//! - 2: user input error (bad prime, malformed file, impossible request),
//! - 3: I/O error.

use crate::asclass::{self, GBundleChernData};
use crate::cohomology::{CohomologyRing, RingElement};
use crate::cyclotomic::CyclotomicNumber;
use crate::families;
use crate::json;
use crate::relations::{self, OrderParity};
use crate::symfun::{Partition, TauTable};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Success / all checks passed.
pub const EXIT_OK: i32 = 0;
/// A proved identity failed on computed data; indicates a bug, never input.
pub const EXIT_TRIPWIRE: i32 = 1;
/// Invalid user input (non-prime p, malformed JSON, bad arguments).
pub const EXIT_USAGE: i32 = 2;
/// File or stream I/O failure.
pub const EXIT_IO: i32 = 3;

/// Runs the CLI on the given argument list (including the program name)
/// and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (out, result) = match &cli.command {
        Command::TauTable(a) => (a.out.clone(), cmd_tau_table(a)),
        Command::Relations(a) => (a.out.clone(), cmd_relations(a)),
        Command::SpanDim(a) => (a.out.clone(), cmd_span_dim(a)),
        Command::CheckTheorem(a) => (a.out.clone(), cmd_check_theorem(a)),
        Command::AsClass(a) => (a.out.clone(), cmd_as_class(a)),
        Command::BuildBundle(a) => (a.out(), cmd_build_bundle(a)),
        Command::ClassifyPrimes(a) => (a.out.clone(), cmd_classify_primes(a)),
        Command::FinitenessDemo(a) => (a.out.clone(), cmd_finiteness_demo(a)),
    };
    match result {
        Ok((text, code)) => match emit(&out, &text) {
            Ok(()) => code,
            Err(e) => report(e),
        },
        Err(e) => report(e),
    }
}

fn report(e: CliError) -> i32 {
    match e {
        CliError::Usage(m) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        CliError::Io(m) => {
            eprintln!("error: {m}");
            EXIT_IO
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(String, i32), CliError>;

#[derive(Parser)]
#[command(
    name = "as-kit",
    version,
    about = "Exact Atiyah-Singer characteristic classes of Z/p-equivariant bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact tau(lambda)(zeta^k) tables for one prime.
    TauTable(TauTableArgs),
    /// Span dimensions and integer relations of tau((1)) for all odd primes <= pmax.
    Relations(RelationsArgs),
    /// Rank and relation space of {tau((r))(zeta^k)} for one prime and degree.
    SpanDim(SpanDimArgs),
    /// Check the vanishing criterion on a bundle file: verdict vs. conditions.
    CheckTheorem(CheckTheoremArgs),
    /// Atiyah-Singer class, A-factor, and character table of a bundle file.
    AsClass(AsClassArgs),
    /// Build a family of vanishing bundles from a tau relation.
    BuildBundle(BuildBundleArgs),
    /// Order-of-2 profiles (parity, residue mod 8, defect) for odd primes <= pmax.
    ClassifyPrimes(ClassifyPrimesArgs),
    /// Integer solutions of x^2 - y^2 = 1 and the c2-condition filter.
    FinitenessDemo(FinitenessDemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TauTableArgs {
    /// Odd prime p.
    #[arg(long)]
    p: u64,
    /// Maximum partition weight; rows cover every nonempty partition of
    /// weight <= this bound.
    #[arg(long, default_value_t = 3)]
    weight: u32,
    /// Add float columns (complex embedding) as a sanity channel.
    #[arg(long)]
    float: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RelationsArgs {
    /// Scan all odd primes p <= pmax.
    #[arg(long)]
    pmax: u64,
    /// Add a float residual column |sum_k u_k / sin(2 pi k / p)| for rows
    /// carrying a relation.
    #[arg(long)]
    float: bool,
    /// Stop emitting rows after the first prediction mismatch.
    #[arg(long)]
    fail_fast: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SpanDimArgs {
    /// Odd prime p.
    #[arg(long)]
    p: u64,
    /// Degree of the single-row partition (r).
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Series truncation order (raised to r when below it).
    #[arg(long)]
    order: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CheckTheoremArgs {
    /// Path to a bundle JSON file.
    #[arg(long)]
    bundle: PathBuf,
    /// Add float columns to the character table.
    #[arg(long)]
    float: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct AsClassArgs {
    /// Path to a bundle JSON file.
    #[arg(long)]
    bundle: PathBuf,
    /// Power of the chosen generator whose class is displayed.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    n: i64,
    /// Add float columns to the character table.
    #[arg(long)]
    float: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BuildBundleArgs {
    /// Odd prime p.
    #[arg(long)]
    p: u64,
    /// Builtin ring name (point, s2, cp<N>, cp2#cp2bar) or a path to a
    /// ring JSON file.
    #[arg(long, default_value = "s2")]
    ring: String,
    /// Comma-separated eigenbundle ranks d_1,...,d_{(p-1)/2}.
    #[arg(long, value_delimiter = ',', required = true)]
    mult: Vec<usize>,
    /// Number of family members.
    #[arg(long, default_value_t = 10)]
    count: u32,
    /// Name of the degree-2 basis element used as the nilpotent base;
    /// defaults to the first degree-2 basis element of the ring.
    #[arg(long)]
    beta: Option<String>,
    /// Integer relation u_1,...,u_{(p-1)/2} annihilating the tau((1))
    /// values; defaults to the kernel relation found for p.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    relation: Option<Vec<i64>>,
    /// Extra integer scale applied to the relation (first Chern classes
    /// become m * scale * u_k * beta).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    scale: i64,
    /// Output format; the JSON form carries the full bundle list.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl BuildBundleArgs {
    fn out(&self) -> OutputArgs {
        OutputArgs {
            format: self.format,
            output: self.output.clone(),
        }
    }
}

#[derive(Args)]
struct ClassifyPrimesArgs {
    /// Scan all odd primes p <= pmax.
    #[arg(long)]
    pmax: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FinitenessDemoArgs {
    /// Scan bound on |x|.
    #[arg(long, default_value_t = 1_000_000, allow_hyphen_values = true)]
    bound: i64,
    /// Also scan the c2 compatibility condition on CP^2 # CP^2-bar over
    /// |x|, |y| <= this bound and compare the two solution sets.
    #[arg(long)]
    c2_bound: Option<i64>,
    /// Prime used for the coefficient field of the c2 scan.
    #[arg(long, default_value_t = 5)]
    p: u64,
    #[command(flatten)]
    out: OutputArgs,
}

// ---------------------------------------------------------------- helpers

fn emit(out: &OutputArgs, text: &str) -> std::result::Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write as _;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn odd_primes_up_to(n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut candidate = 3u64;
    while candidate <= n {
        if (3..=candidate.isqrt()).step_by(2).all(|d| candidate % d != 0) {
            primes.push(candidate);
        }
        candidate += 2;
    }
    primes
}

/// "num/den" with the denominator always spelled out.
fn csv_rational(q: &num::BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// One CSV cell per power-basis coordinate.
fn csv_cyclotomic_cells(x: &CyclotomicNumber) -> String {
    x.coords()
        .iter()
        .map(csv_rational)
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_cyclotomic_header(p: u64) -> String {
    (0..p - 1)
        .map(|i| format!("c{i}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// "(1 1 -1)" — space-separated so the string stays CSV-safe.
fn int_vec_str(v: &[BigInt]) -> String {
    let body = v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ");
    format!("({body})")
}

fn int_vec_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(json::integer_to_value).collect())
}

fn complex_str(x: &CyclotomicNumber) -> String {
    let z = x.to_complex();
    format!("{}{:+}i", z.re, z.im)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value trees serialize");
    s.push('\n');
    s
}

fn load_bundle(path: &Path) -> std::result::Result<GBundleChernData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(json::bundle_from_str(&text)?)
}

/// Resolves `--ring`: an existing file path is parsed as a ring JSON
/// file, anything else as a builtin ring name.
fn load_ring(
    source: &str,
    p: u64,
) -> std::result::Result<(Arc<CohomologyRing>, Option<String>), CliError> {
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("malformed JSON in {}: {e}", path.display())))?;
        let ring = json::ring_from_value(&value)?;
        if ring.p() != p {
            return Err(Error::FieldMismatch(p, ring.p()).into());
        }
        Ok((ring, None))
    } else {
        Ok((json::builtin_ring(source, p)?, Some(source.to_string())))
    }
}

fn character_table(
    bundle: &GBundleChernData,
) -> Result<Vec<(i64, CyclotomicNumber)>> {
    let one = RingElement::unit(bundle.ring());
    (1..bundle.p() as i64)
        .map(|n| Ok((n, asclass::as_character(bundle, &one, n)?)))
        .collect()
}

fn describe_ring(ring: &CohomologyRing) -> String {
    format!(
        "basis [{}], top degree {}",
        ring.names().join(", "),
        ring.top()
    )
}

// ------------------------------------------------------------- tau-table

fn cmd_tau_table(a: &TauTableArgs) -> CmdResult {
    let table = TauTable::build(a.p, a.weight)?;
    let partitions: Vec<Partition> = table
        .partitions()
        .into_iter()
        .filter(|l| l.weight() > 0)
        .collect();
    let half = (a.p - 1) / 2;
    let mut rows: Vec<(u64, &Partition, CyclotomicNumber)> = Vec::new();
    for k in 1..=half {
        for lambda in &partitions {
            rows.push((k, lambda, table.value(k, lambda)?.clone()));
        }
    }

    let text = match a.out.format {
        Format::Text => {
            let mut s = format!("tau values for p = {} (weight <= {})\n", a.p, a.weight);
            for (k, lambda, value) in &rows {
                s.push_str(&format!("k={k}  {lambda}  {value}"));
                if a.float {
                    s.push_str(&format!("  ~ {}", complex_str(value)));
                }
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let mut s = format!("p,k,partition,{}", csv_cyclotomic_header(a.p));
            if a.float {
                s.push_str(",float_re,float_im");
            }
            s.push('\n');
            for (k, lambda, value) in &rows {
                s.push_str(&format!(
                    "{},{k},{lambda},{}",
                    a.p,
                    csv_cyclotomic_cells(value)
                ));
                if a.float {
                    let z = value.to_complex();
                    s.push_str(&format!(",{},{}", z.re, z.im));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(k, lambda, value)| {
                    let mut row = json!({
                        "k": k,
                        "partition": lambda.parts(),
                        "value": json::cyclotomic_to_value(value),
                    });
                    if a.float {
                        let z = value.to_complex();
                        row["float"] = json!([z.re, z.im]);
                    }
                    row
                })
                .collect();
            pretty(&json!({ "p": a.p, "weight": a.weight, "rows": rows }))
        }
    };
    Ok((text, EXIT_OK))
}

// ------------------------------------------------------------- relations

struct RelationRow {
    p: u64,
    t: u64,
    parity: OrderParity,
    predicted: u64,
    computed: usize,
    kernel_dim: usize,
    relation: Option<Vec<BigInt>>,
    residual: Option<f64>,
}

impl RelationRow {
    fn consistent(&self) -> bool {
        self.predicted as usize == self.computed
    }
}

fn relation_row(p: u64, float: bool) -> Result<RelationRow> {
    let profile = relations::prime_profile(p)?;
    let result = relations::tau_rank(p, 1, 1)?;
    let relation = if result.kernel.is_empty() {
        None
    } else {
        Some(relations::find_relation(p)?)
    };
    let residual = match (&relation, float) {
        (Some(u), true) => Some(sine_residual(p, u)),
        _ => None,
    };
    Ok(RelationRow {
        p,
        t: profile.t,
        parity: profile.parity,
        predicted: profile.ewing_span_dim(),
        computed: result.rank,
        kernel_dim: result.kernel.len(),
        relation,
        residual,
    })
}

/// |sum_k u_k / sin(2 pi k / p)|, the float shadow of the exact relation.
fn sine_residual(p: u64, u: &[BigInt]) -> f64 {
    let mut acc = 0.0f64;
    for (i, uk) in u.iter().enumerate() {
        let k = (i + 1) as f64;
        let angle = 2.0 * std::f64::consts::PI * k / p as f64;
        acc += uk.to_f64().unwrap_or(f64::NAN) / angle.sin();
    }
    acc.abs()
}

fn cmd_relations(a: &RelationsArgs) -> CmdResult {
    let primes = odd_primes_up_to(a.pmax);
    let mut rows: Vec<RelationRow> = primes
        .par_iter()
        .map(|&p| relation_row(p, a.float))
        .collect::<Result<Vec<_>>>()?;
    let consistent = rows.iter().all(RelationRow::consistent);
    if a.fail_fast {
        if let Some(i) = rows.iter().position(|r| !r.consistent()) {
            rows.truncate(i + 1);
        }
    }

    let text = match a.out.format {
        Format::Text => {
            let mut s = format!("tau((1)) spans for odd primes p <= {}\n", a.pmax);
            for r in &rows {
                s.push_str(&format!(
                    "p={}  t={}  parity={}  predicted={}  computed={}  kernel_dim={}",
                    r.p, r.t, r.parity, r.predicted, r.computed, r.kernel_dim
                ));
                if let Some(u) = &r.relation {
                    s.push_str(&format!("  relation={}", int_vec_str(u)));
                }
                if let Some(res) = r.residual {
                    s.push_str(&format!("  float_residual={res}"));
                }
                s.push('\n');
            }
            s.push_str(if consistent {
                "all computed ranks match the predictions\n"
            } else {
                "MISMATCH: some computed rank disagrees with its prediction\n"
            });
            s
        }
        Format::Csv => {
            let mut s =
                String::from("p,t,parity,predicted_dim,computed_rank,kernel_dim,sample_relation");
            if a.float {
                s.push_str(",float_residual");
            }
            s.push('\n');
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}",
                    r.p,
                    r.t,
                    r.parity,
                    r.predicted,
                    r.computed,
                    r.kernel_dim,
                    r.relation.as_deref().map(int_vec_str).unwrap_or_default()
                ));
                if a.float {
                    match r.residual {
                        Some(res) => s.push_str(&format!(",{res}")),
                        None => s.push(','),
                    }
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut row = json!({
                        "p": r.p,
                        "t": r.t,
                        "parity": r.parity.to_string(),
                        "predicted_dim": r.predicted,
                        "computed_rank": r.computed,
                        "kernel_dim": r.kernel_dim,
                        "sample_relation": r.relation.as_deref().map(int_vec_value),
                    });
                    if a.float {
                        row["float_residual"] = json!(r.residual);
                    }
                    row
                })
                .collect();
            pretty(&json!({ "pmax": a.pmax, "consistent": consistent, "rows": rows }))
        }
    };
    Ok((text, if consistent { EXIT_OK } else { EXIT_TRIPWIRE }))
}

// -------------------------------------------------------------- span-dim

fn cmd_span_dim(a: &SpanDimArgs) -> CmdResult {
    let order = a.order.unwrap_or(a.r);
    let result = relations::tau_rank(a.p, a.r, order)?;
    let profile = relations::prime_profile(a.p)?;
    let predicted = if a.r == 1 {
        profile.ewing_span_dim()
    } else {
        (a.p - 1) / 2
    };
    let consistent = predicted as usize == result.rank;

    let text = match a.out.format {
        Format::Text => {
            let mut s = format!(
                "span of tau(({}))(zeta^k) for p = {}\npredicted_dim={predicted}\ncomputed_rank={}\nkernel_dim={}\n",
                a.r,
                a.p,
                result.rank,
                result.kernel.len()
            );
            for (i, v) in result.kernel.iter().enumerate() {
                s.push_str(&format!("kernel[{i}]={}\n", int_vec_str(v)));
            }
            s.push_str(&format!(
                "consistent: {}\n",
                if consistent { "true" } else { "false" }
            ));
            s
        }
        Format::Csv => {
            let kernel = result
                .kernel
                .iter()
                .map(|v| int_vec_str(v))
                .collect::<Vec<_>>()
                .join(";");
            format!(
                "p,r,predicted_dim,computed_rank,kernel_dim,kernel\n{},{},{predicted},{},{},{kernel}\n",
                a.p,
                a.r,
                result.rank,
                result.kernel.len()
            )
        }
        Format::Json => pretty(&json!({
            "p": a.p,
            "r": a.r,
            "predicted_dim": predicted,
            "computed_rank": result.rank,
            "kernel_dim": result.kernel.len(),
            "kernel": result.kernel.iter().map(|v| int_vec_value(v)).collect::<Vec<_>>(),
            "consistent": consistent,
        })),
    };
    Ok((text, if consistent { EXIT_OK } else { EXIT_TRIPWIRE }))
}

// --------------------------------------------------------- check-theorem

fn cmd_check_theorem(a: &CheckTheoremArgs) -> CmdResult {
    let bundle = load_bundle(&a.bundle)?;
    let vanishing = asclass::is_vanishing(&bundle)?;
    let (cond1, cond2) = asclass::theorem_conditions(&bundle)?;
    let consistent = vanishing == (cond1 && cond2);
    let characters = character_table(&bundle)?;
    let p = bundle.p();

    let text = match a.out.format {
        Format::Text => {
            let mut s = format!(
                "bundle over p = {p}, {}\nrank profile: {:?}\nvanishing: {vanishing}\ncondition 1 (c1 relation): {cond1}\ncondition 2 (exponential eigenbundles): {cond2}\nequivalence: {}\ncharacter table (L = 1):\n",
                describe_ring(bundle.ring()),
                bundle.rank_profile(),
                if consistent { "consistent" } else { "VIOLATED" }
            );
            for (n, value) in &characters {
                s.push_str(&format!("n={n}  {value}"));
                if a.float {
                    s.push_str(&format!("  ~ {}", complex_str(value)));
                }
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let mut s = format!("n,{},vanishing,cond1,cond2", csv_cyclotomic_header(p));
            if a.float {
                s.push_str(",float_re,float_im");
            }
            s.push('\n');
            for (n, value) in &characters {
                s.push_str(&format!(
                    "{n},{},{vanishing},{cond1},{cond2}",
                    csv_cyclotomic_cells(value)
                ));
                if a.float {
                    let z = value.to_complex();
                    s.push_str(&format!(",{},{}", z.re, z.im));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let chars: Vec<Value> = characters
                .iter()
                .map(|(n, value)| {
                    let mut row = json!({ "n": n, "value": json::cyclotomic_to_value(value) });
                    if a.float {
                        let z = value.to_complex();
                        row["float"] = json!([z.re, z.im]);
                    }
                    row
                })
                .collect();
            pretty(&json!({
                "p": p,
                "rank_profile": bundle.rank_profile(),
                "vanishing": vanishing,
                "cond1": cond1,
                "cond2": cond2,
                "consistent": consistent,
                "characters": chars,
            }))
        }
    };
    Ok((text, if consistent { EXIT_OK } else { EXIT_TRIPWIRE }))
}

// -------------------------------------------------------------- as-class

fn cmd_as_class(a: &AsClassArgs) -> CmdResult {
    let bundle = load_bundle(&a.bundle)?;
    let p = bundle.p();
    let total = asclass::total_m_class(&bundle, a.n)?;
    let a_factor = asclass::a_factor(&bundle, a.n)?;
    let vanishing = asclass::is_vanishing(&bundle)?;
    let order = bundle.ring().top() / 2;
    let eigen_classes: Vec<RingElement> = (1..=(p - 1) / 2)
        .map(|k| asclass::eigen_m_class(&bundle, k, a.n, order))
        .collect::<Result<Vec<_>>>()?;
    let characters = character_table(&bundle)?;

    let text = match a.out.format {
        Format::Text => {
            let mut s = format!(
                "bundle over p = {p}, {}\nrank profile: {:?}\nn = {}\na_factor = {a_factor}\ntotal class = {total}\n",
                describe_ring(bundle.ring()),
                bundle.rank_profile(),
                a.n
            );
            for (i, class) in eigen_classes.iter().enumerate() {
                s.push_str(&format!("eigen class k={}: {class}\n", i + 1));
            }
            s.push_str(&format!("vanishing: {vanishing}\ncharacter table (L = 1):\n"));
            for (n, value) in &characters {
                s.push_str(&format!("n={n}  {value}"));
                if a.float {
                    s.push_str(&format!("  ~ {}", complex_str(value)));
                }
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let mut s = format!("n,{}", csv_cyclotomic_header(p));
            if a.float {
                s.push_str(",float_re,float_im");
            }
            s.push('\n');
            for (n, value) in &characters {
                s.push_str(&format!("{n},{}", csv_cyclotomic_cells(value)));
                if a.float {
                    let z = value.to_complex();
                    s.push_str(&format!(",{},{}", z.re, z.im));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let chars: Vec<Value> = characters
                .iter()
                .map(|(n, value)| {
                    let mut row = json!({ "n": n, "value": json::cyclotomic_to_value(value) });
                    if a.float {
                        let z = value.to_complex();
                        row["float"] = json!([z.re, z.im]);
                    }
                    row
                })
                .collect();
            pretty(&json!({
                "p": p,
                "n": a.n,
                "rank_profile": bundle.rank_profile(),
                "a_factor": json::cyclotomic_to_value(&a_factor),
                "total_class": json::element_to_value(&total),
                "eigen_classes": eigen_classes.iter().map(json::element_to_value).collect::<Vec<_>>(),
                "vanishing": vanishing,
                "characters": chars,
            }))
        }
    };
    Ok((text, EXIT_OK))
}

// ----------------------------------------------------------- build-bundle

fn cmd_build_bundle(a: &BuildBundleArgs) -> CmdResult {
    let (ring, ring_name) = load_ring(&a.ring, a.p)?;
    let beta_name = match &a.beta {
        Some(name) => {
            if ring.basis_index(name).is_none() {
                return Err(CliError::Usage(format!(
                    "no basis element named {name:?} in the ring"
                )));
            }
            name.clone()
        }
        None => {
            let idx = ring.degrees().iter().position(|&d| d == 2).ok_or_else(|| {
                CliError::Usage(
                    "the ring has no degree-2 basis element; pass --beta explicitly".into(),
                )
            })?;
            ring.names()[idx].clone()
        }
    };
    let beta = RingElement::basis_element(&ring, &beta_name)?;
    if a.scale == 0 {
        return Err(CliError::Usage("--scale must be nonzero".into()));
    }
    let relation: Vec<BigInt> = match &a.relation {
        Some(u) => {
            if u.iter().all(|&x| x == 0) {
                return Err(CliError::Usage("--relation must be nonzero".into()));
            }
            u.iter().map(|&x| BigInt::from(x)).collect()
        }
        None => relations::find_relation(a.p)?,
    };
    let scaled: Vec<BigInt> = relation.iter().map(|u| u * BigInt::from(a.scale)).collect();
    let family = families::build_vanishing_family(&ring, &beta, &a.mult, &scaled, a.count)?;

    let profile = relations::prime_profile(a.p)?;
    let defect = profile.u.unwrap_or_else(|| profile.ewing_span_dim());
    let nilpotence = families::nilpotence_check(&beta, &a.mult, defect)?;
    let d_max = a.mult.iter().copied().max().unwrap_or(0);
    let min_scale = families::minimal_integral_scale(&beta, d_max)?;

    // Independent verification: the builder promises vanishing members;
    // re-derive the verdict and both conditions from scratch per member.
    let verification: Vec<(u32, bool, bool, bool)> = family
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let v = asclass::is_vanishing(b)?;
            let (c1, c2) = asclass::theorem_conditions(b)?;
            Ok((i as u32 + 1, v, c1, c2))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_vanishing = verification.iter().all(|&(_, v, c1, c2)| v && c1 && c2);
    let mut c1_profiles: Vec<String> = family
        .iter()
        .map(|b| {
            let coords: Vec<CyclotomicNumber> = b
                .eigen()
                .iter()
                .flat_map(|e| e.chern_class(1).coords().to_vec())
                .collect();
            format!("{coords:?}")
        })
        .collect();
    c1_profiles.sort();
    c1_profiles.dedup();
    let distinct_c1 = c1_profiles.len() == family.len();
    let code = if all_vanishing { EXIT_OK } else { EXIT_TRIPWIRE };

    let text = match a.format {
        Format::Text => {
            let mut s = format!(
                "vanishing family for p = {} over {}\nbeta = {beta_name}, relation = {}, scale = {}, multiplicities = {:?}, count = {}\nnilpotence degree N = {}; eligible k = {:?}; sufficient: {}\nminimal integral scale = {min_scale}\n",
                a.p,
                ring_name.as_deref().unwrap_or("a custom ring"),
                int_vec_str(&relation),
                a.scale,
                a.mult,
                a.count,
                nilpotence.n,
                nilpotence.eligible_k,
                nilpotence.sufficient
            );
            for (m, v, c1, c2) in &verification {
                s.push_str(&format!(
                    "member {m}: vanishing={v} cond1={c1} cond2={c2}\n"
                ));
            }
            s.push_str(&format!(
                "all members vanish: {all_vanishing}\ndistinct c1 profiles: {distinct_c1}\n"
            ));
            s
        }
        Format::Csv => {
            let mut s = String::from("member,vanishing,cond1,cond2\n");
            for (m, v, c1, c2) in &verification {
                s.push_str(&format!("{m},{v},{c1},{c2}\n"));
            }
            s
        }
        Format::Json => {
            let members: Vec<Value> = family
                .iter()
                .map(|b| json::bundle_to_value(b, ring_name.as_deref()))
                .collect();
            let verification: Vec<Value> = verification
                .iter()
                .map(|(m, v, c1, c2)| {
                    json!({ "member": m, "vanishing": v, "cond1": c1, "cond2": c2 })
                })
                .collect();
            pretty(&json!({
                "p": a.p,
                "ring": ring_name.as_deref().map(Value::from).unwrap_or_else(|| json::ring_to_value(&ring)),
                "beta": beta_name,
                "relation": int_vec_value(&relation),
                "scale": a.scale,
                "multiplicities": a.mult,
                "count": a.count,
                "nilpotence": {
                    "degree": nilpotence.n,
                    "eligible_k": nilpotence.eligible_k,
                    "sufficient": nilpotence.sufficient,
                },
                "minimal_integral_scale": json::integer_to_value(&min_scale),
                "members": members,
                "verification": verification,
                "all_vanishing": all_vanishing,
                "distinct_c1_profiles": distinct_c1,
            }))
        }
    };
    Ok((text, code))
}

// -------------------------------------------------------- classify-primes

fn cmd_classify_primes(a: &ClassifyPrimesArgs) -> CmdResult {
    let rows: Vec<relations::PrimeProfile> = odd_primes_up_to(a.pmax)
        .par_iter()
        .map(|&p| relations::prime_profile(p))
        .collect::<Result<Vec<_>>>()?;
    // p = 7 mod 8 makes 2 a quadratic residue with -1 a non-residue, which
    // forces the order of 2 to be odd; a violation would be a library bug.
    let remark_holds = rows
        .iter()
        .all(|r| r.residue_mod_8 != 7 || r.parity == OrderParity::Odd);
    let code = if remark_holds { EXIT_OK } else { EXIT_TRIPWIRE };

    let text = match a.out.format {
        Format::Text => {
            let mut s = format!("order-of-2 profiles for odd primes p <= {}\n", a.pmax);
            for r in &rows {
                s.push_str(&format!(
                    "p={}  t={}  parity={}  residue_mod_8={}",
                    r.p, r.t, r.parity, r.residue_mod_8
                ));
                if let Some(u) = r.u {
                    s.push_str(&format!("  u={u}"));
                }
                s.push('\n');
            }
            s.push_str(&format!(
                "every p = 7 (mod 8) has odd order of 2: {remark_holds}\n"
            ));
            s
        }
        Format::Csv => {
            let mut s = String::from("p,t,parity,residue_mod_8,u\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.p,
                    r.t,
                    r.parity,
                    r.residue_mod_8,
                    r.u.map(|u| u.to_string()).unwrap_or_default()
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "p": r.p,
                        "t": r.t,
                        "parity": r.parity.to_string(),
                        "residue_mod_8": r.residue_mod_8,
                        "u": r.u,
                    })
                })
                .collect();
            pretty(&json!({
                "pmax": a.pmax,
                "mod8_remark_holds": remark_holds,
                "rows": rows,
            }))
        }
    };
    Ok((text, code))
}

// ------------------------------------------------------- finiteness-demo

fn cmd_finiteness_demo(a: &FinitenessDemoArgs) -> CmdResult {
    let solutions = families::finiteness_demo(a.bound);
    let c2 = match a.c2_bound {
        Some(bound) => Some((bound, families::c2_solution_filter(a.p, bound)?)),
        None => None,
    };
    let agree = c2.as_ref().map(|(_, filtered)| {
        let mut direct = solutions.clone();
        let mut other = filtered.clone();
        direct.sort_unstable();
        other.sort_unstable();
        direct == other
    });
    let code = if agree == Some(false) {
        EXIT_TRIPWIRE
    } else {
        EXIT_OK
    };

    let text = match a.out.format {
        Format::Text => {
            let mut s = format!(
                "integer solutions of x^2 - y^2 = 1 with |x|, |y| <= {}:\n",
                a.bound
            );
            for (x, y) in &solutions {
                s.push_str(&format!("({x}, {y})\n"));
            }
            s.push_str(&format!("total: {}\n", solutions.len()));
            if let Some((bound, filtered)) = &c2 {
                s.push_str(&format!(
                    "c2-condition filter on CP^2 # CP^2-bar (p = {}, |x|, |y| <= {bound}):\n",
                    a.p
                ));
                for (x, y) in filtered {
                    s.push_str(&format!("({x}, {y})\n"));
                }
                s.push_str(&format!("total: {}\n", filtered.len()));
                s.push_str(&format!(
                    "agreement with the direct solution set: {}\n",
                    agree.expect("set when c2 ran")
                ));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("source,x,y\n");
            for (x, y) in &solutions {
                s.push_str(&format!("direct,{x},{y}\n"));
            }
            if let Some((_, filtered)) = &c2 {
                for (x, y) in filtered {
                    s.push_str(&format!("c2,{x},{y}\n"));
                }
            }
            s
        }
        Format::Json => {
            let mut body = json!({
                "bound": a.bound,
                "solutions": solutions,
            });
            if let Some((bound, filtered)) = &c2 {
                body["c2"] = json!({
                    "p": a.p,
                    "bound": bound,
                    "solutions": filtered,
                    "agree": agree.expect("set when c2 ran"),
                });
            }
            pretty(&body)
        }
    };
    Ok((text, code))
}
