//! Command-line jobs, JSON reports and the on-disk Gröbner cache.

mod cache;
mod job;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use cache::{CacheStats, DiskCache, CACHE_DIR_ENV};
pub use job::{execute_job, Report};

/// Exit status of a job.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 2;
    pub const BUDGET_EXCEEDED: i32 = 3;
    pub const INPUT_ERROR: i32 = 4;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Gb,
    InitialIdeal,
    Colon,
    Intersect,
    Height,
    Fedder,
    Nu,
    FptBounds,
    FptMono,
    GenericLink,
    IterateLink,
    ResidualIntersection,
    AmbientLink,
    DoubleLink,
    PropertyP,
    PropagateP,
    KvWitness,
    AInvariant,
    Family,
    SplittingProbe,
}

/// Flags shared by every subcommand; each command reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct JobArgs {
    /// Comma-separated variable names.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vars: Option<String>,
    /// Field characteristic: 0 for the rationals, or a prime.
    #[arg(long = "char", default_value_t = 0)]
    #[serde(rename = "char")]
    pub characteristic: u64,
    /// `lex`, `degrevlex`, `lex:a,b,…`, `degrevlex:a,b,…`, or a family order
    /// name (`diagonal`, `pfaffian`, `symplectic`).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    /// Generators separated by commas or newlines.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    /// File holding the generators.
    #[arg(long, conflicts_with = "ideal")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal_file: Option<PathBuf>,
    /// Second ideal for `colon` and `intersect`.
    #[arg(long = "by", visible_alias = "with")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    /// The α-sequence.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    /// Prime for Frobenius computations; defaults to the characteristic.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_max: Option<u32>,
    /// Number of generic combinations of a residual intersection.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Height of the ideal, when known.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    /// Compare the closed form with the colon.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub cross_check: bool,
    /// `closed-form`, `colon` or `cross-check`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// `link` or `ri`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// `minors`, `hankel`, `pfaffian` or `symplectic`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Columns, or the variable count for `a-invariant`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    /// Size of an alternating matrix.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Generator degree for `a-invariant`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Height for `a-invariant`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    /// Multiplier `c` for `splitting-probe`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    /// Element `g` for `splitting-probe`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<String>,
    /// Echoed in the report for randomized drivers.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_reductions: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_degree: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_variables: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_seconds: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

/// A command plus its flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: CommandName,
    #[serde(flatten)]
    pub args: JobArgs,
}

impl JobSpec {
    pub fn new(command: CommandName, args: JobArgs) -> Self {
        JobSpec { command, args }
    }
}

#[derive(Debug, Parser)]
#[command(name = "liaison", version, about = "Generic links, residual intersections and F-singularities")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis.
    Gb(JobArgs),
    /// Initial ideal under an order.
    InitialIdeal(JobArgs),
    /// Ideal quotient `I : J`.
    Colon(JobArgs),
    /// Intersection of two ideals.
    Intersect(JobArgs),
    /// Height and Krull dimension.
    Height(JobArgs),
    /// Fedder's F-purity criterion.
    Fedder(JobArgs),
    /// ν_I(p^e).
    Nu(JobArgs),
    /// Bounds on the F-pure threshold.
    FptBounds(JobArgs),
    /// Log canonical threshold of a monomial ideal.
    FptMono(JobArgs),
    /// Generic link L_1(I).
    GenericLink(JobArgs),
    /// Iterated generic links L_k(I).
    IterateLink(JobArgs),
    /// Generic residual intersection RI(s; α).
    ResidualIntersection(JobArgs),
    /// The link (α) : I.
    AmbientLink(JobArgs),
    /// Checks (α) : ((α) : I) = I.
    DoubleLink(JobArgs),
    /// Property-P certificate.
    PropertyP(JobArgs),
    /// Certificate for the generic link or residual intersection.
    PropagateP(JobArgs),
    /// Product of the α-sequence and its initial term.
    KvWitness(JobArgs),
    /// a-invariant of the universal link.
    AInvariant(JobArgs),
    /// Build and inspect a family ideal.
    Family(JobArgs),
    /// Probe c^(p-2) g^(p-1) against J^[p] : J.
    SplittingProbe(JobArgs),
}

impl Cmd {
    fn into_spec(self) -> JobSpec {
        use CommandName as C;
        let (command, args) = match self {
            Cmd::Gb(a) => (C::Gb, a),
            Cmd::InitialIdeal(a) => (C::InitialIdeal, a),
            Cmd::Colon(a) => (C::Colon, a),
            Cmd::Intersect(a) => (C::Intersect, a),
            Cmd::Height(a) => (C::Height, a),
            Cmd::Fedder(a) => (C::Fedder, a),
            Cmd::Nu(a) => (C::Nu, a),
            Cmd::FptBounds(a) => (C::FptBounds, a),
            Cmd::FptMono(a) => (C::FptMono, a),
            Cmd::GenericLink(a) => (C::GenericLink, a),
            Cmd::IterateLink(a) => (C::IterateLink, a),
            Cmd::ResidualIntersection(a) => (C::ResidualIntersection, a),
            Cmd::AmbientLink(a) => (C::AmbientLink, a),
            Cmd::DoubleLink(a) => (C::DoubleLink, a),
            Cmd::PropertyP(a) => (C::PropertyP, a),
            Cmd::PropagateP(a) => (C::PropagateP, a),
            Cmd::KvWitness(a) => (C::KvWitness, a),
            Cmd::AInvariant(a) => (C::AInvariant, a),
            Cmd::Family(a) => (C::Family, a),
            Cmd::SplittingProbe(a) => (C::SplittingProbe, a),
        };
        JobSpec { command, args }
    }
}

/// Parses `argv`, runs the job against the cache named by the environment
/// and writes the report. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INPUT_ERROR } else { exit::SUCCESS };
        }
    };
    let spec = cli.command.into_spec();
    let cache = Arc::new(DiskCache::from_env());
    let report = execute_job(&spec, Some(cache.clone()));
    let stats = cache.stats();
    if stats.hits + stats.misses > 0 {
        eprintln!("cache: {} hits, {} misses, {} writes", stats.hits, stats.misses, stats.writes);
    }
    let text = report.to_json();
    match &spec.args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return exit::INPUT_ERROR;
            }
        }
        None => {
            use std::io::Write;
            // a closed pipe is the reader's choice, not a job failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    if let Some(msg) = report.error() {
        eprintln!("error: {msg}");
    }
    report.exit_code
}
