//! Command-line front end for the plane-count engine.
//!
//! Three subcommands: `compute` evaluates one canonical invariant key,
//! `table` tabulates a family over a degree range, and `validate` runs a
//! self-check suite. Results go to stdout and are byte-identical across
//! runs; timing goes to stderr. Exit code 0 is success, 1 a usage or
//! computation error, 2 a failed validation check.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use planecount::cache::CacheStore;
use planecount::engine::Provenance;
use planecount::key::InvariantKey;
use planecount::tables;
use planecount::validate::{self, Suite};
use planecount::{Engine, Rational};

#[derive(Parser)]
#[command(
    name = "planecount",
    version,
    about = "Exact rational counts of plane curves and their line descendants",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single invariant key
    Compute {
        /// Canonical key, e.g. "N(d=3)", "psiL(d=2,k=1)" or "rel(d=3,a=[],b=[2,1])"
        key: String,
        /// Output shape
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// JSON cache file, loaded before and saved after the run
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
    },
    /// Tabulate one invariant family over a degree range
    Table {
        /// Family to tabulate
        #[arg(value_enum)]
        kind: TableKind,
        /// Degree or inclusive degree range, "D" or "A..B"
        #[arg(long, default_value = "1..3", value_parser = parse_range)]
        d: (i64, i64),
        /// Psi power, used by the psiP and psiL families
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Output shape
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// JSON cache file, loaded before and saved after the run
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
    },
    /// Run a self-check suite, one report line per check
    Validate {
        /// Which checks to run: known, cross, or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// JSON cache file, loaded before and saved after the run
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Plane counts N_d
    N,
    /// Point descendants psiP(d,k)
    #[value(name = "psiP")]
    PsiP,
    /// Line descendants psiL(d,k)
    #[value(name = "psiL")]
    PsiL,
    /// Two-line invariants psiLL(d)
    #[value(name = "psiLL")]
    PsiLL,
    /// Built-in special-degree constants
    Constants,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let one = |t: &str| t.parse::<i64>().map_err(|_| format!("invalid degree \"{}\"", t));
    match s.split_once("..") {
        Some((a, b)) => {
            let lo = one(a)?;
            let hi = one(b)?;
            if lo > hi {
                return Err(format!("empty degree range \"{}\"", s));
            }
            Ok((lo, hi))
        }
        None => {
            let d = one(s)?;
            Ok((d, d))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let outcome = run(cli);
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Compute { key, format, cache } => {
            let key = InvariantKey::from_str(&key).map_err(|e| e.to_string())?;
            with_engine(cache, |engine| {
                let (value, provenance) =
                    engine.value_with_provenance(&key).map_err(|e| e.to_string())?;
                print_single(&key, &value, provenance, format);
                Ok(ExitCode::SUCCESS)
            })
        }
        Command::Table { kind: TableKind::Constants, format, .. } => {
            print_constants(format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { kind, d: (lo, hi), k, format, cache } => with_engine(cache, |engine| {
            let mut rows = Vec::new();
            for d in lo..=hi {
                let key = match kind {
                    TableKind::N => InvariantKey::n(d),
                    TableKind::PsiP => InvariantKey::psi_p(d, k),
                    TableKind::PsiL => InvariantKey::psi_l(d, k),
                    TableKind::PsiLL => InvariantKey::psi_ll(d),
                    TableKind::Constants => unreachable!(),
                }
                .map_err(|e| e.to_string())?;
                let (value, provenance) =
                    engine.value_with_provenance(&key).map_err(|e| e.to_string())?;
                rows.push((d, key, value, provenance));
            }
            print_table(&rows, format);
            Ok(ExitCode::SUCCESS)
        }),
        Command::Validate { suite, cache } => {
            let suite = Suite::from_str(&suite).map_err(|e| e.to_string())?;
            with_engine(cache, |engine| {
                let checks = validate::run_suite(engine, suite);
                print!("{}", validate::format_report(&checks));
                if validate::has_failures(&checks) {
                    Ok(ExitCode::from(2))
                } else {
                    Ok(ExitCode::SUCCESS)
                }
            })
        }
    }
}

/// Builds the engine, loading the cache file when given and present, and
/// saves the store back after a successful run.
fn with_engine<F>(cache: Option<PathBuf>, f: F) -> Result<ExitCode, String>
where
    F: FnOnce(&Engine) -> Result<ExitCode, String>,
{
    let engine = match &cache {
        Some(path) if path.exists() => {
            Engine::with_store(CacheStore::load(path).map_err(|e| e.to_string())?)
        }
        _ => Engine::new(),
    };
    let code = f(&engine)?;
    if let Some(path) = &cache {
        engine.store().save(path).map_err(|e| e.to_string())?;
    }
    Ok(code)
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn print_single(key: &InvariantKey, value: &Rational, provenance: Provenance, format: Format) {
    match format {
        Format::Text => println!("{}", value),
        Format::Csv => {
            println!("key,value");
            println!("{},{}", csv_quote(&key.to_string()), value);
        }
        Format::Json => {
            let row = serde_json::json!({
                "key": key.to_string(),
                "value": value.to_string(),
                "provenance": provenance.to_string(),
            });
            println!("{}", row);
        }
    }
}

fn print_table(rows: &[(i64, InvariantKey, Rational, Provenance)], format: Format) {
    match format {
        Format::Text => {
            for (d, _, value, _) in rows {
                println!("{}\t{}", d, value);
            }
        }
        Format::Csv => {
            println!("d,value");
            for (d, _, value, _) in rows {
                println!("{},{}", d, value);
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(_, key, value, provenance)| {
                    serde_json::json!({
                        "key": key.to_string(),
                        "value": value.to_string(),
                        "provenance": provenance.to_string(),
                    })
                })
                .collect();
            println!("{}", serde_json::Value::Array(items));
        }
    }
}

fn print_constants(format: Format) {
    let rows = tables::constants();
    match format {
        Format::Text => {
            for row in rows {
                println!("{}\t{}\t{}", row.key, row.value, row.note);
            }
        }
        Format::Csv => {
            println!("key,value,note");
            for row in rows {
                println!("{},{},{}", csv_quote(&row.key.to_string()), row.value, csv_quote(row.note));
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "key": row.key.to_string(),
                        "value": row.value,
                        "note": row.note,
                    })
                })
                .collect();
            println!("{}", serde_json::Value::Array(items));
        }
    }
}
