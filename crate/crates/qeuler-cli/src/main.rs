//! Command-line front end: compute generalized q-Euler numbers, print
//! tables, run divisibility verification sweeps, and manage the persistent
//! polynomial cache.
//!
//! Exit statuses: 0 success, 1 verification failure, 2 usage error,
//! 3 I/O or format error, 4 enumeration budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qeuler::cache::CacheStore;
use qeuler::divisibility::{is_prime, sweep_shard_with, ClaimId, Verdict, VerificationReport};
use qeuler::euler::{euler_oracle, EulerCache};
use qeuler::{OracleError, QPolynomial};

/// Environment variable naming the default cache path.
const CACHE_ENV: &str = "QEULER_CACHE";
const CACHE_DEFAULT: &str = "qeuler_cache.txt";

#[derive(Parser)]
#[command(
    name = "qeuler",
    version,
    about = "Generalized q-Euler numbers: exact computation and divisibility verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn period_parser() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(2..)
}

#[derive(Subcommand)]
enum Command {
    /// Compute E_{n|k}(q) and its count at q = 1
    Compute {
        /// Permutation length n
        n: u32,
        /// Descent period k (at least 2)
        #[arg(value_parser = period_parser())]
        k: u32,
        /// Compute by brute-force permutation enumeration instead of the recursion
        #[arg(long)]
        oracle: bool,
        /// Cross-check the recursion against the brute-force oracle
        #[arg(long)]
        check: bool,
        /// Cache file to read (default: $QEULER_CACHE or ./qeuler_cache.txt)
        #[arg(long, value_name = "PATH")]
        cache_path: Option<PathBuf>,
    },
    /// Print E_{n|k}(q) for n = 0..=N_MAX
    Table {
        /// Descent period k (at least 2)
        #[arg(value_parser = period_parser())]
        k: u32,
        /// Last row to print
        n_max: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
        #[arg(long, value_name = "PATH")]
        cache_path: Option<PathBuf>,
    },
    /// Run divisibility claims over a parameter grid and stream the reports
    Verify {
        /// Periods to check, comma-separated
        #[arg(long = "k", value_delimiter = ',', required = true, value_parser = period_parser())]
        k: Vec<u32>,
        /// Inclusive bound on every subscript (nk+i, 2n+1, nk)
        #[arg(long = "max-N", required = true, value_parser = clap::value_parser!(u32).range(2..))]
        max_n: u32,
        /// Claims to run, comma-separated (default: all)
        #[arg(long, value_delimiter = ',', value_parser = parse_claim)]
        claims: Option<Vec<ClaimId>>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
        /// Explorer failures also gate the exit status
        #[arg(long)]
        strict_explore: bool,
        /// Run non-prime periods as exploration instead of reporting inapplicable
        #[arg(long)]
        force: bool,
        #[arg(long, value_name = "PATH")]
        cache_path: Option<PathBuf>,
    },
    /// Manage the persistent polynomial cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Compute and persist E_{n|k} for n = 0..=MAX_N
    Warm {
        /// Periods to warm, comma-separated
        #[arg(long = "k", value_delimiter = ',', required = true, value_parser = period_parser())]
        k: Vec<u32>,
        #[arg(long = "max-n", required = true)]
        max_n: u32,
        #[arg(long, value_name = "PATH")]
        cache_path: Option<PathBuf>,
    },
    /// Write the store to FILE in canonical form
    Export {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        cache_path: Option<PathBuf>,
    },
    /// Merge a store file into the cache (rejects other format versions)
    Import {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        cache_path: Option<PathBuf>,
    },
    /// Entry counts and maximum polynomial degree
    Stats {
        #[arg(long, value_name = "PATH")]
        cache_path: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Json,
    Csv,
}

fn parse_claim(s: &str) -> Result<ClaimId, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = ClaimId::ALL.iter().map(|c| c.as_str()).collect();
        format!("unknown claim `{s}`; valid claims: {}", names.join(", "))
    })
}

enum CliError {
    Verification(String),
    Io(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Io(_) => 3,
            CliError::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Io(m) | CliError::Budget(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Compute {
            n,
            k,
            oracle,
            check,
            cache_path,
        } => cmd_compute(n, k, oracle, check, &resolve_cache_path(cache_path)),
        Command::Table {
            k,
            n_max,
            format,
            cache_path,
        } => cmd_table(k, n_max, format, &resolve_cache_path(cache_path)),
        Command::Verify {
            k,
            max_n,
            claims,
            format,
            strict_explore,
            force,
            cache_path,
        } => {
            let claims = claims.unwrap_or_else(|| ClaimId::ALL.to_vec());
            cmd_verify(
                &k,
                max_n,
                &claims,
                format,
                strict_explore,
                force,
                &resolve_cache_path(cache_path),
            )
        }
        Command::Cache { action } => match action {
            CacheAction::Warm {
                k,
                max_n,
                cache_path,
            } => cmd_cache_warm(&k, max_n, &resolve_cache_path(cache_path)),
            CacheAction::Export { file, cache_path } => {
                cmd_cache_export(&file, &resolve_cache_path(cache_path))
            }
            CacheAction::Import { file, cache_path } => {
                cmd_cache_import(&file, &resolve_cache_path(cache_path))
            }
            CacheAction::Stats { cache_path } => cmd_cache_stats(&resolve_cache_path(cache_path)),
        },
    }
}

fn resolve_cache_path(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(CACHE_DEFAULT))
}

/// Reads the store when the file exists; a missing file is a cold start,
/// but a present-and-broken file is an error, never silently ignored.
fn load_store_if_present(path: &Path) -> Result<CacheStore, CliError> {
    if !path.exists() {
        return Ok(CacheStore::new());
    }
    CacheStore::load(path).map_err(|e| CliError::Io(e.to_string()))
}

fn save_store(store: &CacheStore, path: &Path) -> Result<(), CliError> {
    store.save(path).map_err(|e| CliError::Io(e.to_string()))
}

fn oracle_value(n: u32, k: u32) -> Result<QPolynomial, CliError> {
    euler_oracle(n, k).map_err(|e| match e {
        OracleError::Budget(b) => CliError::Budget(b.to_string()),
        // the period is validated at the argument boundary
        OracleError::Period(p) => CliError::Verification(p.to_string()),
    })
}

fn cmd_compute(n: u32, k: u32, oracle: bool, check: bool, cache_path: &Path) -> Result<(), CliError> {
    let store = load_store_if_present(cache_path)?;
    let mut cache = EulerCache::warm_from(&store);
    let value = if oracle {
        oracle_value(n, k)?
    } else {
        cache.euler_q(n, k).expect("k >= 2 enforced by the parser")
    };
    println!("E[{n}|{k}](q) = {value}");
    println!("count = {}", value.eval_at_one());
    if check {
        let recursion = cache.euler_q(n, k).expect("k >= 2 enforced by the parser");
        let reference = oracle_value(n, k)?;
        if recursion == reference {
            println!("oracle agreement: yes");
        } else {
            println!("oracle agreement: NO");
            return Err(CliError::Verification(format!(
                "recursion and oracle disagree for E[{n}|{k}](q)"
            )));
        }
    }
    Ok(())
}

/// Semicolon-joined decimal coefficients, the CSV and store encoding.
fn coeff_list(poly: &QPolynomial) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    poly.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn cmd_table(k: u32, n_max: u32, format: OutputFormat, cache_path: &Path) -> Result<(), CliError> {
    let store = load_store_if_present(cache_path)?;
    let mut cache = EulerCache::warm_from(&store);
    if format == OutputFormat::Csv {
        println!("n,k,coeffs,count");
    }
    for n in 0..=n_max {
        let poly = cache.euler_q(n, k).expect("k >= 2 enforced by the parser");
        let count = poly.eval_at_one();
        match format {
            OutputFormat::Plain => println!("E[{n}|{k}](q) = {poly}  count = {count}"),
            OutputFormat::Csv => println!("{n},{k},{},{count}", coeff_list(&poly)),
            OutputFormat::Json => {
                let record = json!({
                    "n": n,
                    "k": k,
                    "poly": poly.to_string(),
                    "coeffs": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "count": count.to_string(),
                });
                println!("{record}");
            }
        }
    }
    Ok(())
}

fn report_params_text(report: &VerificationReport) -> String {
    report
        .params
        .iter()
        .map(|(name, value)| format!("{name}={value}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_report(report: &VerificationReport, format: OutputFormat, elapsed_ms: u128) {
    match format {
        OutputFormat::Plain => {
            let mut line = format!(
                "{} {}: {}",
                report.claim,
                report_params_text(report),
                report.verdict
            );
            if let Some(witness) = &report.witness {
                line.push_str(&format!("  witness = {witness}"));
            }
            println!("{line}");
        }
        OutputFormat::Csv => {
            let get = |name: &str| {
                report
                    .params
                    .iter()
                    .find(|(p, _)| *p == name)
                    .map(|(_, v)| v.to_string())
                    .unwrap_or_default()
            };
            let witness = report
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_default();
            println!(
                "{},{},{},{},{},{},{},{}",
                report.claim,
                get("n"),
                get("m"),
                get("k"),
                get("i"),
                get("j"),
                report.verdict,
                witness
            );
        }
        OutputFormat::Json => {
            let params: serde_json::Map<String, serde_json::Value> = report
                .params
                .iter()
                .map(|(name, value)| (name.to_string(), json!(value)))
                .collect();
            let witness = match &report.witness {
                Some(w) => json!(w.to_string()),
                None => serde_json::Value::Null,
            };
            let record = json!({
                "claim": report.claim.to_string(),
                "params": params,
                "verdict": report.verdict.to_string(),
                "witness": witness,
                "elapsed-milliseconds": elapsed_ms,
            });
            println!("{record}");
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    k_set: &[u32],
    max_n: u32,
    claims: &[ClaimId],
    format: OutputFormat,
    strict_explore: bool,
    force: bool,
    cache_path: &Path,
) -> Result<(), CliError> {
    // the cache file, when present, must be valid even though verification
    // recomputes from its own shards
    let _ = load_store_if_present(cache_path)?;
    if format == OutputFormat::Csv {
        println!("claim,n,m,k,i,j,verdict,witness");
    }
    let mut totals = (0u64, 0u64, 0u64); // holds, fails, inapplicable
    let mut gating_fails = 0u64;
    let mut explorer_findings = 0u64;
    for &k in k_set {
        let mut mark = Instant::now();
        sweep_shard_with(k, max_n, claims, force, &mut |report| {
            let now = Instant::now();
            let elapsed_ms = now.duration_since(mark).as_millis();
            mark = now;
            print_report(&report, format, elapsed_ms);
            match report.verdict {
                Verdict::Holds => totals.0 += 1,
                Verdict::Fails => {
                    totals.1 += 1;
                    if report.claim.is_explorer() {
                        explorer_findings += 1;
                        if strict_explore {
                            gating_fails += 1;
                        }
                    } else if is_prime(k) {
                        // forced composite-k runs are exploration, not gates
                        gating_fails += 1;
                    }
                }
                Verdict::Inapplicable => totals.2 += 1,
            }
        });
    }
    eprintln!(
        "verified {} instances: {} holds, {} fails, {} inapplicable",
        totals.0 + totals.1 + totals.2,
        totals.0,
        totals.1,
        totals.2
    );
    if explorer_findings > 0 {
        eprintln!("explorer findings: {explorer_findings}");
    }
    if gating_fails > 0 {
        return Err(CliError::Verification(format!(
            "{gating_fails} claim instance(s) failed"
        )));
    }
    Ok(())
}

fn cmd_cache_warm(k_set: &[u32], max_n: u32, cache_path: &Path) -> Result<(), CliError> {
    let mut store = load_store_if_present(cache_path)?;
    let mut cache = EulerCache::warm_from(&store);
    for &k in k_set {
        cache
            .euler_q(max_n, k)
            .expect("k >= 2 enforced by the parser");
        println!("warmed k={k} up to n={max_n}");
    }
    cache.flush_to(&mut store);
    save_store(&store, cache_path)?;
    println!("cache written: {} ({} entries)", cache_path.display(), store.len());
    Ok(())
}

fn cmd_cache_export(file: &Path, cache_path: &Path) -> Result<(), CliError> {
    let store = load_store_if_present(cache_path)?;
    store
        .save(file)
        .map_err(|e| CliError::Io(e.to_string()))?;
    println!("exported {} entries to {}", store.len(), file.display());
    Ok(())
}

fn cmd_cache_import(file: &Path, cache_path: &Path) -> Result<(), CliError> {
    let imported = CacheStore::load(file).map_err(|e| CliError::Io(e.to_string()))?;
    let mut store = load_store_if_present(cache_path)?;
    let count = imported.len();
    store.merge(imported);
    save_store(&store, cache_path)?;
    println!("imported {} entries from {}", count, file.display());
    Ok(())
}

fn cmd_cache_stats(cache_path: &Path) -> Result<(), CliError> {
    let store = load_store_if_present(cache_path)?;
    println!("entries: {}", store.len());
    if store.is_empty() {
        return Ok(());
    }
    let max_degree = store
        .iter()
        .filter_map(|(_, poly)| poly.degree())
        .max()
        .unwrap_or(0);
    println!("max degree: {max_degree}");
    let mut per_k: Vec<(u32, usize)> = Vec::new();
    for (key, _) in store.iter() {
        match per_k.last_mut() {
            Some((k, count)) if *k == key.k() => *count += 1,
            _ => per_k.push((key.k(), 1)),
        }
    }
    for (k, count) in per_k {
        println!("k={k}: {count}");
    }
    Ok(())
}
