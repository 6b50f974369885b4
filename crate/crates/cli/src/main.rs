//! `apery`: term generation, congruence sweeps and constant recovery.
//!
//! Exit codes: 0 when every report holds (or every recovery matches),
//! 1 when at least one fails, 2 on a usage error.

mod disk_cache;
mod output;
mod ranges;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use apery_core::arith::primes_in;
use apery_core::congruence::{self, DEFAULT_MAGNITUDE_BOUND};
use apery_core::sequences::{fit_recurrence, term, TermCache, FIT_VALIDATION_LIMIT};
use apery_core::{CongruenceReport, RecoveryReport, SequenceFamily, ShapeKind, DEFAULT_INDEX_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use output::Format;
use ranges::{IndexRange, ParamPairs};

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

macro_rules! usage {
    ($($arg:tt)*) => {
        anyhow::Error::new(UsageError(format!($($arg)*)))
    };
}

#[derive(Parser)]
#[command(
    name = "apery",
    version,
    about = "Apéry-like sequences and their supercongruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact sequence terms.
    Seq(SeqArgs),
    /// Fit a three-term recurrence to a family.
    Fit(FitArgs),
    /// Verify a congruence over a parameter grid.
    Verify(VerifyArgs),
    /// Recover conjectured constants from per-prime residues.
    Recover(RecoverArgs),
    /// Inspect, warm or clear the on-disk term cache.
    Cache(CacheArgs),
}

#[derive(Args, Clone, Serialize)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory holding cached term lists.
    #[arg(long)]
    #[serde(skip)]
    cache_dir: Option<PathBuf>,
    /// Largest sequence index any request may touch.
    #[arg(long, default_value_t = DEFAULT_INDEX_CAP)]
    index_cap: usize,
    /// Worker threads for parameter grids.
    #[arg(long, default_value_t = 1)]
    #[serde(skip)]
    jobs: usize,
}

#[derive(Args, Clone, Serialize)]
struct FamilyArgs {
    /// Family name: apery-a, apery-b, c-star, domb, d-general, zagier-b, az-f, delta, zeta.
    #[arg(long)]
    family: String,
    /// Exponent r of the generalized Domb family.
    #[arg(long)]
    r: Option<u32>,
    /// Exponent s of the generalized Domb family.
    #[arg(long)]
    s: Option<u32>,
}

impl FamilyArgs {
    fn resolve(&self) -> Result<SequenceFamily> {
        if self.family == "d-general" && (self.r.is_none() || self.s.is_none()) {
            return Err(usage!("d-general needs --r and --s"));
        }
        SequenceFamily::parse_with(&self.family, self.r.unwrap_or(2), self.s.unwrap_or(1))
            .map_err(|e| usage!("{e}"))
    }
}

#[derive(Args, Clone, Serialize)]
struct SeqArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Indices to print.
    #[arg(long, default_value = "0..10")]
    n: IndexRange,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Shape {
    Zagier2,
    Az3,
}

#[derive(Args, Clone, Serialize)]
struct FitArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum)]
    shape: Shape,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum StatementArg {
    Theorem1,
    Theorem2,
    Wolstenholme,
    Harmonic,
    Cc8,
    Cc9,
    Cc13,
    Lifting,
    Conjecture,
}

#[derive(Args, Clone, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    statement: StatementArg,
    /// Inclusive prime range; non-primes are filtered out.
    #[arg(long)]
    primes: IndexRange,
    /// Values of n (defaults depend on the statement).
    #[arg(long)]
    n: Option<IndexRange>,
    /// Values of k for cc9 (default 0..3).
    #[arg(long)]
    k: Option<IndexRange>,
    /// Single r for theorem1.
    #[arg(long)]
    r: Option<u32>,
    /// Single s for theorem1.
    #[arg(long)]
    s: Option<u32>,
    /// Explicit (r, s) pairs for theorem1, e.g. 2:1,3:1.
    #[arg(long)]
    rs: Option<ParamPairs>,
    /// Lifting level m (default 1).
    #[arg(long)]
    m: Option<u32>,
    /// Families for lifting (domb, c-star) or conjecture (zagier-b, az-f, delta, zeta).
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Serialize)]
struct RecoverArgs {
    /// One or more of zagier-b, az-f, delta, zeta.
    #[arg(long, value_delimiter = ',', required = true)]
    family: Vec<String>,
    #[arg(long, default_value = "1..8")]
    n: IndexRange,
    #[arg(long, default_value = "5..60")]
    primes: IndexRange,
    /// Largest |U_n| the prime set must be able to resolve.
    #[arg(long, default_value_t = DEFAULT_MAGNITUDE_BOUND as u64)]
    bound: u64,
    /// Replacement expected values U_1, U_2, ... (single family only).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    expected: Option<Vec<i64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone, Serialize)]
struct CacheArgs {
    /// Remove every cache file.
    #[arg(long)]
    clear: bool,
    /// Family to warm.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    /// Terms u_0..u_max are written, max taken from this range.
    #[arg(long)]
    n: Option<IndexRange>,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_usage(&err) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn is_usage(err: &anyhow::Error) -> bool {
    use apery_core::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return true;
    }
    matches!(
        err.downcast_ref::<E>(),
        Some(
            E::UnsupportedParameters(_)
                | E::IndexCapExceeded { .. }
                | E::InsufficientPrimes { .. }
                | E::InvalidModulus(_)
        )
    )
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Seq(args) => cmd_seq(&args),
        Command::Fit(args) => cmd_fit(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Recover(args) => cmd_recover(&args),
        Command::Cache(args) => cmd_cache(&args),
    }
}

fn check_cap(index: u64, common: &Common) -> Result<()> {
    if index > common.index_cap as u64 {
        return Err(usage!(
            "index {index} exceeds --index-cap {}",
            common.index_cap
        ));
    }
    Ok(())
}

fn preload(common: &Common, families: &[SequenceFamily]) {
    if let Some(dir) = &common.cache_dir {
        for &f in families {
            disk_cache::preload(dir, f);
        }
    }
}

fn pool(common: &Common) -> Result<rayon::ThreadPool> {
    if common.jobs == 0 {
        return Err(usage!("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
        .context("building worker pool")
}

fn sweep_primes(range: &IndexRange) -> Result<Vec<u64>> {
    if range.min() < 5 {
        return Err(usage!("prime range must start at 5 or above (got {range})"));
    }
    let primes: Vec<u64> = range
        .values()
        .into_iter()
        .filter(|&p| primes_in(p, p).len() == 1)
        .collect();
    if primes.is_empty() {
        return Err(usage!("prime range {range} contains no primes"));
    }
    Ok(primes)
}

#[derive(Serialize)]
struct TermRecord {
    family: SequenceFamily,
    n: u64,
    value: String,
}

fn cmd_seq(args: &SeqArgs) -> Result<ExitCode> {
    let family = args.family.resolve()?;
    check_cap(args.n.max(), &args.common)?;
    preload(&args.common, &[family]);
    let indices = args.n.values();
    let pool = pool(&args.common)?;
    let records: Vec<TermRecord> = pool.install(|| {
        indices
            .par_iter()
            .map(|&n| TermRecord {
                family,
                n,
                value: term(family, n as usize).to_string(),
            })
            .collect()
    });

    let mut out = output::stdout();
    match args.common.format {
        Format::Text => {
            for r in &records {
                writeln!(out, "{} {}", r.n, r.value)?;
            }
        }
        Format::Json => output::write_json(&mut out, "seq", args, &records)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["family", "n", "value"])?;
            for r in &records {
                w.write_record([r.family.to_string(), r.n.to_string(), r.value.clone()])?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fit(args: &FitArgs) -> Result<ExitCode> {
    let family = args.family.resolve()?;
    preload(&args.common, &[family]);
    let kind = match args.shape {
        Shape::Zagier2 => ShapeKind::Zagier2,
        Shape::Az3 => ShapeKind::AZ3,
    };
    let shape = match fit_recurrence(family, kind) {
        Ok(shape) => shape,
        Err(e @ apery_core::Error::NoIntegerFit { .. }) => {
            eprintln!("{e}");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = output::stdout();
    match args.common.format {
        Format::Text => {
            let [x, y, z] = shape.coefficients();
            let names = match kind {
                ShapeKind::Zagier2 => ["A", "B", "lambda"],
                ShapeKind::AZ3 => ["a", "b", "c"],
            };
            writeln!(
                out,
                "{family}: {}={x} {}={y} {}={z} (validated for n <= {FIT_VALIDATION_LIMIT})",
                names[0], names[1], names[2]
            )?;
        }
        Format::Json => output::write_json(&mut out, "fit", args, &[shape])?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["family", "shape", "c1", "c2", "c3"])?;
            let [x, y, z] = shape.coefficients();
            let tag = serde_json::to_value(args.shape)?;
            w.write_record([
                family.to_string(),
                tag.as_str().unwrap_or_default().to_string(),
                x.to_string(),
                y.to_string(),
                z.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One grid point of a verification sweep.
#[derive(Debug, Clone, Copy)]
enum Task {
    Theorem1 {
        p: u64,
        n: u64,
        r: u32,
        s: u32,
    },
    Theorem2 {
        p: u64,
        n: u64,
    },
    Wolstenholme {
        p: u64,
        n: u64,
        k: u64,
    },
    Harmonic {
        p: u64,
    },
    Cc8 {
        p: u64,
        n: u64,
        k: u64,
        j: u64,
    },
    Cc9 {
        p: u64,
        k: u64,
        j: u64,
    },
    Cc13 {
        p: u64,
        j: u64,
    },
    Lifting {
        family: SequenceFamily,
        p: u64,
        m: u32,
        n: u64,
        cap: usize,
    },
    Conjecture {
        family: SequenceFamily,
        p: u64,
        n: u64,
    },
}

impl Task {
    /// Largest sequence or binomial row index the task touches.
    fn max_index(&self) -> u64 {
        match *self {
            Task::Theorem1 { p, n, .. }
            | Task::Theorem2 { p, n }
            | Task::Wolstenholme { p, n, .. }
            | Task::Conjecture { p, n, .. } => n * p,
            Task::Harmonic { p } => 2 * p,
            Task::Cc8 { p, n, .. } => 2 * n * p,
            Task::Cc9 { p, k, j } => 2 * k * p + 2 * j,
            Task::Cc13 { p, .. } => 2 * p,
            Task::Lifting { .. } => 0,
        }
    }

    fn run(&self) -> apery_core::Result<Vec<CongruenceReport>> {
        let one = |r: apery_core::Result<CongruenceReport>| r.map(|r| vec![r]);
        match *self {
            Task::Theorem1 { p, n, r, s } => one(congruence::verify_theorem1(p, n, r, s)),
            Task::Theorem2 { p, n } => one(congruence::verify_theorem2(p, n)),
            Task::Wolstenholme { p, n, k } => {
                one(congruence::verify_wolstenholme_binomial(p, n, k))
            }
            Task::Harmonic { p } => congruence::verify_harmonic(p),
            Task::Cc8 { p, n, k, j } => one(congruence::verify_cc8(p, n, k, j)),
            Task::Cc9 { p, k, j } => one(congruence::verify_cc9(p, k, j)),
            Task::Cc13 { p, j } => one(congruence::verify_cc13_cc14(p, j)),
            Task::Lifting {
                family,
                p,
                m,
                n,
                cap,
            } => one(congruence::verify_lifting(family, p, m, n, cap)),
            Task::Conjecture { family, p, n } => one(congruence::verify_conjecture(family, n, p)),
        }
    }
}

const THEOREM1_DEFAULT_PAIRS: [(u32, u32); 4] = [(2, 1), (2, 2), (3, 1), (4, 1)];

fn theorem1_pairs(args: &VerifyArgs) -> Result<Vec<(u32, u32)>> {
    let pairs = match (&args.rs, args.r, args.s) {
        (Some(pairs), None, None) => pairs.0.clone(),
        (Some(_), _, _) => return Err(usage!("use either --rs or --r/--s, not both")),
        (None, None, None) => THEOREM1_DEFAULT_PAIRS.to_vec(),
        (None, r, s) => vec![(r.unwrap_or(2), s.unwrap_or(1))],
    };
    for &(r, s) in &pairs {
        if r < 2 || s < 1 {
            return Err(usage!(
                "theorem1 needs r >= 2 and s >= 1 (got r={r}, s={s})"
            ));
        }
    }
    Ok(pairs)
}

fn parse_families(names: &[String], allowed: &[SequenceFamily]) -> Result<Vec<SequenceFamily>> {
    if names.is_empty() {
        return Ok(allowed.to_vec());
    }
    names
        .iter()
        .map(|name| {
            let family: SequenceFamily = name.parse().map_err(|e| usage!("{e}"))?;
            if !allowed.contains(&family) {
                return Err(usage!("family {family} is not valid here"));
            }
            Ok(family)
        })
        .collect()
}

fn build_tasks(args: &VerifyArgs, primes: &[u64]) -> Result<(Vec<Task>, Vec<SequenceFamily>)> {
    let n_or = |default: &str| -> Vec<u64> {
        args.n
            .clone()
            .unwrap_or_else(|| default.parse().expect("valid default"))
            .values()
    };
    let mut tasks = Vec::new();
    let mut families = Vec::new();
    match args.statement {
        StatementArg::Theorem1 => {
            let pairs = theorem1_pairs(args)?;
            let ns = n_or("1..3");
            if ns.contains(&0) {
                return Err(usage!("theorem1 needs n >= 1"));
            }
            families.extend(
                pairs
                    .iter()
                    .map(|&(r, s)| SequenceFamily::DombGeneral { r, s }),
            );
            for &p in primes {
                for &n in &ns {
                    for &(r, s) in &pairs {
                        tasks.push(Task::Theorem1 { p, n, r, s });
                    }
                }
            }
        }
        StatementArg::Theorem2 => {
            let ns = n_or("1..5");
            if ns.contains(&0) {
                return Err(usage!("theorem2 needs n >= 1"));
            }
            families.push(SequenceFamily::CStar);
            for &p in primes {
                tasks.extend(ns.iter().map(|&n| Task::Theorem2 { p, n }));
            }
        }
        StatementArg::Wolstenholme => {
            let ns = n_or("0..6");
            for &p in primes {
                for &n in &ns {
                    tasks.extend((0..=n).map(|k| Task::Wolstenholme { p, n, k }));
                }
            }
        }
        StatementArg::Harmonic => {
            tasks.extend(primes.iter().map(|&p| Task::Harmonic { p }));
        }
        StatementArg::Cc8 => {
            let ns = n_or("1..3");
            for &p in primes {
                for &n in &ns {
                    for k in 0..n {
                        tasks.extend((1..p).map(|j| Task::Cc8 { p, n, k, j }));
                    }
                }
            }
        }
        StatementArg::Cc9 => {
            let ks = args
                .k
                .clone()
                .unwrap_or_else(|| IndexRange::span(0, 3))
                .values();
            for &p in primes {
                for &k in &ks {
                    tasks.extend((1..p).map(|j| Task::Cc9 { p, k, j }));
                }
            }
        }
        StatementArg::Cc13 => {
            for &p in primes {
                tasks.extend((1..p).map(|j| Task::Cc13 { p, j }));
            }
        }
        StatementArg::Lifting => {
            let fams =
                parse_families(&args.family, &[SequenceFamily::DOMB, SequenceFamily::CStar])?;
            let m = args.m.unwrap_or(1);
            let ns = n_or("1..3");
            families.extend(&fams);
            for &family in &fams {
                for &p in primes {
                    for &n in &ns {
                        tasks.push(Task::Lifting {
                            family,
                            p,
                            m,
                            n,
                            cap: args.common.index_cap,
                        });
                    }
                }
            }
        }
        StatementArg::Conjecture => {
            let fams = parse_families(
                &args.family,
                &[
                    SequenceFamily::ZagierB,
                    SequenceFamily::AZF,
                    SequenceFamily::Delta,
                    SequenceFamily::Zeta,
                ],
            )?;
            let ns = n_or("1..8");
            if ns.iter().any(|&n| !(1..=8).contains(&n)) {
                return Err(usage!("conjecture checks need 1 <= n <= 8"));
            }
            families.extend(&fams);
            for &family in &fams {
                for &p in primes {
                    tasks.extend(ns.iter().map(|&n| Task::Conjecture { family, p, n }));
                }
            }
        }
    }
    Ok((tasks, families))
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let primes = sweep_primes(&args.primes)?;
    let (tasks, families) = build_tasks(args, &primes)?;
    if let Some(max) = tasks.iter().map(Task::max_index).max() {
        check_cap(max, &args.common)?;
    }
    preload(&args.common, &families);

    let pool = pool(&args.common)?;
    let results: apery_core::Result<Vec<Vec<CongruenceReport>>> =
        pool.install(|| tasks.par_iter().map(Task::run).collect());
    let mut reports: Vec<CongruenceReport> = results?.into_iter().flatten().collect();
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

    let mut out = output::stdout();
    match args.common.format {
        Format::Text => output::write_congruence_text(&mut out, &reports)?,
        Format::Json => output::write_json(&mut out, "verify", args, &reports)?,
        Format::Csv => output::write_congruence_csv(&mut out, &reports)?,
    }
    Ok(if reports.iter().all(|r| r.holds) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_recover(args: &RecoverArgs) -> Result<ExitCode> {
    let families = parse_families(
        &args.family,
        &[
            SequenceFamily::ZagierB,
            SequenceFamily::AZF,
            SequenceFamily::Delta,
            SequenceFamily::Zeta,
        ],
    )?;
    if args.expected.is_some() && families.len() != 1 {
        return Err(usage!("--expected needs exactly one --family"));
    }
    let primes = sweep_primes(&args.primes)?;
    let ns = args.n.values();
    if ns.contains(&0) {
        return Err(usage!("recover needs n >= 1"));
    }
    check_cap(
        args.n.max() * primes.last().copied().unwrap_or(0),
        &args.common,
    )?;
    preload(&args.common, &families);

    let grid: Vec<(SequenceFamily, u64)> = families
        .iter()
        .flat_map(|&f| ns.iter().map(move |&n| (f, n)))
        .collect();
    let bound = BigInt::from(args.bound);
    let pool = pool(&args.common)?;
    let results: apery_core::Result<Vec<RecoveryReport>> = pool.install(|| {
        grid.par_iter()
            .map(|&(family, n)| congruence::recover_constant(family, n, &primes, &bound))
            .collect()
    });
    let mut reports = results?;
    reports.sort_by_key(|r| (r.family, r.n));

    if let Some(expected) = &args.expected {
        for r in &mut reports {
            let value = usize::try_from(r.n)
                .ok()
                .and_then(|n| expected.get(n - 1))
                .map(|&v| BigInt::from(v));
            r.set_table_value(value);
        }
    }

    let mut out = output::stdout();
    match args.common.format {
        Format::Text => output::write_recovery_text(&mut out, &reports)?,
        Format::Json => output::write_json(&mut out, "recover", args, &reports)?,
        Format::Csv => output::write_recovery_csv(&mut out, &reports)?,
    }
    Ok(if reports.iter().all(RecoveryReport::succeeded) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_cache(args: &CacheArgs) -> Result<ExitCode> {
    let dir = args
        .common
        .cache_dir
        .clone()
        .ok_or_else(|| usage!("cache needs --cache-dir"))?;
    let mut out = output::stdout();

    if args.clear {
        let removed = disk_cache::clear(&dir)?;
        if args.common.format == Format::Text {
            writeln!(out, "removed {removed} cache files")?;
        }
    }

    if let Some(name) = &args.family {
        let family = FamilyArgs {
            family: name.clone(),
            r: args.r,
            s: args.s,
        }
        .resolve()?;
        let range = args
            .n
            .as_ref()
            .ok_or_else(|| usage!("warming the cache needs --n"))?;
        check_cap(range.max(), &args.common)?;
        disk_cache::preload(&dir, family);
        let len = range.max() as usize + 1;
        let pool = pool(&args.common)?;
        let terms: Vec<_> = pool.install(|| {
            (0..len)
                .into_par_iter()
                .map(|n| TermCache::global().get(family, n))
                .collect()
        });
        let have = disk_cache::load(&dir, family).map_or(0, |t| t.len());
        if len > have {
            disk_cache::store(&dir, family, &terms)
                .with_context(|| format!("writing cache in {}", dir.display()))?;
        }
    }

    let entries = disk_cache::stats(&dir)?;
    match args.common.format {
        Format::Text => {
            for e in &entries {
                writeln!(
                    out,
                    "{} family={} params={} terms={}{}",
                    e.file,
                    e.family,
                    e.params,
                    e.count,
                    if e.valid { "" } else { " (corrupt)" }
                )?;
            }
            writeln!(out, "{} cache files in {}", entries.len(), dir.display())?;
        }
        Format::Json => output::write_json(&mut out, "cache", args, &entries)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["file", "family", "params", "count", "valid"])?;
            for e in &entries {
                w.write_record([
                    e.file.clone(),
                    e.family.clone(),
                    e.params.clone(),
                    e.count.to_string(),
                    e.valid.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
