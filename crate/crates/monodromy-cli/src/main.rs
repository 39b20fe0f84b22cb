//! Exact certification of three-point branched covers from fixture files.
//!
//! Exit codes: 0 all requested work passed with no budget skips, 1 any
//! verification failure, 2 usage or file errors, 3 everything passed but at
//! least one step was skipped for budget reasons.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use monodromy_cli::fixture::load_fixture;
use monodromy_cli::pipeline::{resolve_config, run_scan, run_verify, ScanError};

#[derive(Parser)]
#[command(
    name = "monodromy",
    version,
    about = "Certifies permutation triples and the rational maps they belong to"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Fixture files to process.
    #[arg(required = true, value_name = "FILE")]
    files: Vec<PathBuf>,
    /// Maximum members enumerated per conjugacy class. Plain integers,
    /// underscores, and scientific notation are accepted: 30000000,
    /// 30_000_000, and 3e7 name the same count.
    #[arg(long, value_name = "N", value_parser = parse_count)]
    budget_class_size: Option<u64>,
    /// Wall-clock limit per class enumeration, in seconds. Accepts the
    /// same number formats as --budget-class-size.
    #[arg(long, value_name = "SECONDS", value_parser = parse_count)]
    budget_seconds: Option<u64>,
    /// Seed for randomized class discovery; recorded in every report.
    #[arg(long, value_name = "K")]
    seed: Option<u64>,
    /// Write the reports as a JSON array to this path ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline on each fixture.
    Verify(CommonArgs),
    /// Enumerate every certifiably unique generating class triple of each
    /// fixture's group.
    Scan(CommonArgs),
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Parses a nonnegative integer count, allowing underscore separators and
/// scientific notation whose value is a whole number.
fn parse_count(text: &str) -> Result<u64, String> {
    let cleaned: String = text.chars().filter(|&c| c != '_').collect();
    let (mantissa, exponent) = match cleaned.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: u32 = e.parse().map_err(|_| format!("bad exponent in '{text}'"))?;
            (m, exp)
        }
        None => (cleaned.as_str(), 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let frac = frac.trim_end_matches('0');
    let digits = format!("{whole}{frac}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("'{text}' is not a nonnegative integer"));
    }
    let scale = (exponent as usize)
        .checked_sub(frac.len())
        .ok_or_else(|| format!("'{text}' is not a whole number"))?;
    let base: u64 = digits
        .parse()
        .map_err(|_| format!("'{text}' is out of range"))?;
    let power = 10u64
        .checked_pow(u32::try_from(scale).map_err(|_| format!("'{text}' is out of range"))?)
        .ok_or_else(|| format!("'{text}' is out of range"))?;
    base.checked_mul(power)
        .ok_or_else(|| format!("'{text}' is out of range"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(args) => verify_command(&args),
        Command::Scan(args) => scan_command(&args),
    };
    ExitCode::from(code)
}

fn verify_command(args: &CommonArgs) -> u8 {
    let mut reports = Vec::new();
    for path in &args.files {
        let fx = match load_fixture(path) {
            Ok(fx) => fx,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let cfg = resolve_config(&fx, args.budget_class_size, args.budget_seconds, args.seed);
        let report = run_verify(&fx, &cfg);
        print!("{report}");
        reports.push(report);
    }
    if let Err(code) = write_json(args.json.as_deref(), &reports) {
        return code;
    }
    if reports.iter().any(|r| !r.pass) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.budget_limited) {
        EXIT_BUDGET
    } else {
        0
    }
}

fn scan_command(args: &CommonArgs) -> u8 {
    let mut reports = Vec::new();
    let mut budget_limited = false;
    for path in &args.files {
        let fx = match load_fixture(path) {
            Ok(fx) => fx,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let cfg = resolve_config(&fx, args.budget_class_size, args.budget_seconds, args.seed);
        match run_scan(&fx, &cfg) {
            Ok(report) => {
                print!("{report}");
                budget_limited |= !report.table_complete || report.budget_stop.is_some();
                reports.push(report);
            }
            Err(e @ ScanError::Classes(_)) => {
                eprintln!("error: {e}");
                return EXIT_FAIL;
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }
    if let Err(code) = write_json(args.json.as_deref(), &reports) {
        return code;
    }
    if budget_limited {
        EXIT_BUDGET
    } else {
        0
    }
}

fn write_json<T: Serialize>(path: Option<&std::path::Path>, reports: &[T]) -> Result<(), u8> {
    let Some(path) = path else {
        return Ok(());
    };
    let text = serde_json::to_string_pretty(reports).map_err(|e| {
        eprintln!("error: serializing reports: {e}");
        EXIT_USAGE
    })?;
    if path.as_os_str() == "-" {
        println!("{text}");
        return Ok(());
    }
    std::fs::write(path, text).map_err(|e| {
        eprintln!("error: writing {}: {e}", path.display());
        EXIT_USAGE
    })
}

#[cfg(test)]
mod tests {
    use super::parse_count;

    #[test]
    fn counts_parse_in_every_accepted_format() {
        assert_eq!(parse_count("30000000"), Ok(30_000_000));
        assert_eq!(parse_count("30_000_000"), Ok(30_000_000));
        assert_eq!(parse_count("3e7"), Ok(30_000_000));
        assert_eq!(parse_count("3E7"), Ok(30_000_000));
        assert_eq!(parse_count("1.5e7"), Ok(15_000_000));
        assert_eq!(parse_count("0"), Ok(0));
        assert_eq!(parse_count("2.0"), Ok(2));
    }

    #[test]
    fn fractional_and_malformed_counts_are_rejected() {
        assert!(parse_count("1.25e1").is_err());
        assert!(parse_count("0.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("3e").is_err());
        assert!(parse_count("e7").is_err());
        assert!(parse_count("abc").is_err());
        assert!(parse_count("").is_err());
        assert!(parse_count("1e40").is_err());
    }
}
