//! Command-line front end: argument parsing, commands and their reports.

pub mod report;
mod verify;

use std::path::PathBuf;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use nilcrunch_core::linearize::{generator_set, FieldSpec};
use nilcrunch_core::relspace::{
    build_relation_space, nilpotency_search, oracle_relation_space, read_checkpoint_header, report_from_space,
    BuildOptions, Nilpotency, QuotientReport, RelationSpace, SpaceSource,
};
use nilcrunch_core::Error;
use serde::{Deserialize, Serialize};

pub use report::{OutputFormat, Report};
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nilcrunch", version, about = "Nilpotency degrees and bases of relatively free nil-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nilpotency degree C_{n,d} over a field.
    Nilpotency(SearchArgs),
    /// Graded dimensions of N_{n,d}.
    Dims(SearchArgs),
    /// Monomial basis of N_{n,d} (deglex-minimal words).
    Basis(SearchArgs),
    /// The generating set of the relation ideal.
    Generators(GeneratorArgs),
    /// Identity suite, membership checks, oracle comparisons and bounds.
    Verify(VerifyArgs),
    /// Compare the generator space with the span of literal n-th powers.
    OracleCompare(OracleArgs),
    /// Continue a computation from a checkpoint.
    Resume(ResumeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Checkpoint written when the run stops early.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Row storage limit in MiB.
    #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_mb: u64,
    /// Largest coordinate space allowed.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_coordinates: u64,
    /// Largest number of stored relation rows.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_rows: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_secs: Option<u64>,
    #[arg(long, value_enum)]
    pub out: Option<OutputFormat>,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=255))]
    pub d: u32,
    /// `q<k>` for the field with k elements, `inf<p>` for an infinite field
    /// of characteristic p.
    #[arg(long)]
    pub field: FieldSpec,
    /// Largest truncation degree tried.
    #[arg(long, default_value_t = 20)]
    pub dmax: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub n: u32,
    #[arg(long)]
    pub field: FieldSpec,
    #[arg(long, value_enum)]
    pub out: Option<OutputFormat>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Largest power used by the identity suite.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(3..=8))]
    pub n_max: u32,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=255))]
    pub d: u32,
    /// Prime field order.
    #[arg(long)]
    pub q: u64,
    /// Truncation degree.
    #[arg(long)]
    pub truncation: usize,
    /// Support degree of the polynomials raised to the n-th power.
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ResumeArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_mb: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_secs: Option<u64>,
    #[arg(long, value_enum)]
    pub out: Option<OutputFormat>,
}

/// What a search checkpoint needs to finish the command that wrote it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct ResumeContext {
    command: String,
    dmax: usize,
}

/// Outcome of a command: the report (if any), the exit code and a message
/// for standard error.
pub struct Outcome {
    pub report: Option<Report>,
    pub format: OutputFormat,
    pub code: i32,
    pub message: Option<String>,
}

impl Outcome {
    fn report(report: Report, format: OutputFormat, code: i32) -> Self {
        Outcome {
            report: Some(report),
            format,
            code,
            message: None,
        }
    }

    fn error(err: &Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } | Error::Cancelled { .. } | Error::NotCertified { .. } => EXIT_BUDGET,
            _ => EXIT_BAD_INPUT,
        };
        let mut msg = err.to_string();
        if let Some(p) = err.checkpoint() {
            msg.push_str(&format!("; resume with: nilcrunch resume --checkpoint {}", p.display()));
        }
        Outcome {
            report: None,
            format: OutputFormat::Json,
            code,
            message: Some(msg),
        }
    }
}

/// Checkpoint location used when none is given.
pub fn default_checkpoint(name: &str) -> PathBuf {
    let dir = std::env::var_os("NILCRUNCH_CHECKPOINT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    dir.join(format!("{name}.ckpt"))
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn options(b: &BudgetArgs, checkpoint: PathBuf, cancel: &Arc<AtomicBool>) -> BuildOptions {
    BuildOptions {
        jobs: b.jobs as usize,
        budget_bytes: Some((b.budget_mb as usize).saturating_mul(1 << 20)),
        max_coordinates: Some(b.max_coordinates as usize),
        max_rows: b.max_rows.map(|r| r as usize),
        deadline: b.timeout_secs.map(|s| Instant::now() + Duration::from_secs(s)),
        cancel: Some(cancel.clone()),
        checkpoint: Some(checkpoint),
        ..Default::default()
    }
}

/// Runs a parsed command. `cancel` is raised by the interrupt handler.
pub fn run(cli: Cli, cancel: &Arc<AtomicBool>) -> Outcome {
    let started = Instant::now();
    let result = match cli.command {
        Command::Nilpotency(a) => search_command("nilpotency", a, cancel, started),
        Command::Dims(a) => search_command("dims", a, cancel, started),
        Command::Basis(a) => search_command("basis", a, cancel, started),
        Command::Generators(a) => Ok(generators(a, started)),
        Command::Verify(a) => {
            let opts = options(&a.budget, default_checkpoint("nilcrunch-verify"), cancel);
            let fmt = a.budget.out.unwrap_or(OutputFormat::Json);
            let r = verify::run(a.n_max, &opts, started);
            let code = if r.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok(Outcome::report(Report::Verify(r), fmt, code))
        }
        Command::OracleCompare(a) => oracle_compare(a, cancel, started),
        Command::Resume(a) => resume(a, cancel, started),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn search_command(command: &str, a: SearchArgs, cancel: &Arc<AtomicBool>, started: Instant) -> Result<Outcome, Error> {
    let checkpoint = a.budget.checkpoint.clone().unwrap_or_else(|| {
        default_checkpoint(&format!("nilcrunch-{command}-n{}-d{}-{}", a.n, a.d, a.field))
    });
    let mut opts = options(&a.budget, checkpoint, cancel);
    opts.checkpoint_context = serde_json::to_value(ResumeContext {
        command: command.to_string(),
        dmax: a.dmax,
    })
    .expect("context serializes");
    let default_fmt = if command == "nilpotency" { OutputFormat::Json } else { OutputFormat::Csv };
    let fmt = a.budget.out.unwrap_or(default_fmt);
    finish_search(command, a.n, a.d as usize, a.field, a.dmax, &opts, None, fmt, started)
}

#[allow(clippy::too_many_arguments)]
fn finish_search(
    command: &str,
    n: u32,
    d: usize,
    field: FieldSpec,
    dmax: usize,
    opts: &BuildOptions,
    resumed: Option<RelationSpace>,
    fmt: OutputFormat,
    started: Instant,
) -> Result<Outcome, Error> {
    if fmt == OutputFormat::Csv && command == "nilpotency" {
        return Err(Error::InvalidInput("csv output is only available for dims and basis".into()));
    }
    let res = nilpotency_search(n, d, field, dmax, opts, resumed)?;
    let with_basis = command == "basis";
    let c = match res.outcome {
        Nilpotency::Reached { c } => c,
        Nilpotency::NotReached { dmax, lower_bound } => {
            let r = NilpotencyReport {
                schema: SCHEMA,
                command: command.to_string(),
                n,
                d,
                field,
                dmax,
                status: Status::NotReached,
                c: None,
                lower_bound: Some(lower_bound),
                certified: false,
                dims: None,
                total_dim: None,
                probed: res.probed,
                elapsed_ms: elapsed_ms(started),
            };
            let fmt = if fmt == OutputFormat::Csv { OutputFormat::Json } else { fmt };
            return Ok(Outcome::report(Report::Nilpotency(r), fmt, EXIT_BUDGET));
        }
    };
    let q = quotient(n, d, field, c, res.space.as_ref(), with_basis, opts)?;
    if command == "nilpotency" {
        let r = NilpotencyReport {
            schema: SCHEMA,
            command: command.to_string(),
            n,
            d,
            field,
            dmax,
            status: Status::Reached,
            c: Some(c),
            lower_bound: None,
            certified: true,
            dims: Some(q.dims),
            total_dim: Some(q.total_dim),
            probed: res.probed,
            elapsed_ms: elapsed_ms(started),
        };
        return Ok(Outcome::report(Report::Nilpotency(r), fmt, EXIT_OK));
    }
    let infinite = if n == 3 {
        let inf_field = field.infinite_counterpart();
        let mut inf_opts = opts.clone();
        inf_opts.checkpoint = None;
        let inf = nilpotency_search(n, d, inf_field, dmax, &inf_opts, None)?;
        match inf.outcome {
            Nilpotency::Reached { c: ci } => {
                let qi = quotient(n, d, inf_field, ci, inf.space.as_ref(), with_basis, &inf_opts)?;
                let extra_words = match (&q.basis, &qi.basis) {
                    (Some(a), Some(b)) => Some(a.iter().filter(|w| !b.contains(w)).cloned().collect()),
                    _ => None,
                };
                Some(InfiniteComparison {
                    field: inf_field,
                    c: ci,
                    delta: q.total_dim as i64 - qi.total_dim as i64,
                    dims: qi.dims,
                    total_dim: qi.total_dim,
                    extra_words,
                })
            }
            Nilpotency::NotReached { .. } => None,
        }
    } else {
        None
    };
    let r = DimsReport {
        schema: SCHEMA,
        command: command.to_string(),
        n,
        d,
        field,
        c,
        dims: q.dims,
        total_dim: q.total_dim,
        basis: q.basis,
        infinite,
        elapsed_ms: elapsed_ms(started),
    };
    Ok(Outcome::report(Report::Dims(r), fmt, EXIT_OK))
}

/// Quotient report at `c`, from the search's space when it has one.
fn quotient(
    n: u32,
    d: usize,
    field: FieldSpec,
    c: usize,
    space: Option<&RelationSpace>,
    with_basis: bool,
    opts: &BuildOptions,
) -> Result<QuotientReport, Error> {
    match space {
        Some(s) => report_from_space(s, with_basis),
        None if n == 1 || d == 1 => {
            // one letter: x1, .., x1^(n-1); no letters survive when n = 1
            let dims: Vec<usize> = (1..=c).map(|k| if k < n as usize { 1 } else { 0 }).collect();
            let basis = (1..n as usize).map(|k| vec!["x1"; k].join("*")).collect();
            Ok(QuotientReport {
                n,
                d,
                field,
                c,
                total_dim: dims.iter().sum(),
                dims,
                basis: with_basis.then_some(basis),
            })
        }
        None => report_from_space(&build_relation_space(n, d, field, c, opts)?, with_basis),
    }
}

fn generators(a: GeneratorArgs, started: Instant) -> Outcome {
    let r = GeneratorsReport {
        schema: SCHEMA,
        command: "generators".into(),
        n: a.n,
        field: a.field,
        generators: generator_set(a.n, &a.field).iter().map(|g| g.describe()).collect(),
        elapsed_ms: elapsed_ms(started),
    };
    let fmt = a.out.unwrap_or(OutputFormat::Json);
    if fmt == OutputFormat::Csv {
        return Outcome::error(&Error::InvalidInput("csv output is only available for dims and basis".into()));
    }
    Outcome::report(Report::Generators(r), fmt, EXIT_OK)
}

/// Builds both spaces and compares their reduced forms.
pub fn compare_with_oracle(
    n: u32,
    d: usize,
    q: u64,
    truncation: usize,
    k: usize,
    opts: &BuildOptions,
) -> Result<OracleReport, Error> {
    let started = Instant::now();
    let field = FieldSpec::finite(q)?;
    let mut gen_opts = opts.clone();
    gen_opts.max_arg_degree = Some(k);
    gen_opts.checkpoint = None;
    let gen = build_relation_space(n, d, field, truncation, &gen_opts)?;
    let oracle = oracle_relation_space(n, d, q, truncation, k, &gen_opts)?;
    Ok(OracleReport {
        schema: SCHEMA,
        command: "oracle-compare".into(),
        n,
        d,
        q,
        truncation,
        k,
        generator_rank: gen.rank(),
        oracle_rank: oracle.rank(),
        equal: gen.canonical_form() == oracle.canonical_form(),
        oracle_saturated: oracle.is_saturated(),
        elapsed_ms: elapsed_ms(started),
    })
}

fn oracle_compare(a: OracleArgs, cancel: &Arc<AtomicBool>, _started: Instant) -> Result<Outcome, Error> {
    let fmt = a.budget.out.unwrap_or(OutputFormat::Json);
    if fmt == OutputFormat::Csv {
        return Err(Error::InvalidInput("csv output is only available for dims and basis".into()));
    }
    let opts = options(&a.budget, default_checkpoint("nilcrunch-oracle"), cancel);
    let r = compare_with_oracle(a.n, a.d as usize, a.q, a.truncation, a.k, &opts)?;
    let code = if r.equal { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome::report(Report::Oracle(r), fmt, code))
}

fn resume(a: ResumeArgs, cancel: &Arc<AtomicBool>, started: Instant) -> Result<Outcome, Error> {
    let header = read_checkpoint_header(&a.checkpoint)?;
    let ctx: ResumeContext = serde_json::from_value(header.context.clone())
        .map_err(|_| Error::Checkpoint("checkpoint was not written by a search command".into()))?;
    if !matches!(header.source, SpaceSource::Generators { max_arg_degree: None }) {
        return Err(Error::Checkpoint("only search checkpoints can be resumed".into()));
    }
    let (space, _) = RelationSpace::load_checkpoint(&a.checkpoint)?;
    let budget = BudgetArgs {
        checkpoint: Some(a.checkpoint.clone()),
        jobs: a.jobs,
        budget_mb: a.budget_mb,
        max_coordinates: u64::MAX,
        max_rows: None,
        timeout_secs: a.timeout_secs,
        out: a.out,
    };
    let mut opts = options(&budget, a.checkpoint.clone(), cancel);
    opts.checkpoint_context = header.context.clone();
    let default_fmt = if ctx.command == "nilpotency" { OutputFormat::Json } else { OutputFormat::Csv };
    let fmt = a.out.unwrap_or(default_fmt);
    finish_search(
        &ctx.command,
        header.n,
        header.d,
        header.field,
        ctx.dmax,
        &opts,
        Some(space),
        fmt,
        started,
    )
}

/// Parses arguments; help and version requests print and return `Err(0)`.
pub fn parse<I, T>(args: I) -> Result<Cli, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        (code, e.render().to_string())
    })
}

