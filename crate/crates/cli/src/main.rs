//! `unisolv`: exact unisolvence verification from the command line.
//!
//! Exit status: 0 when every expectation holds, 1 on a verification
//! failure, 2 on bad usage or input.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use config::{check_dim, resolve_seed, CliError, CliResult, KRange, RunConfig, SimplexSource};

#[derive(Parser)]
#[command(name = "unisolv", version, about = "Exact unisolvence certificates for P_{k,d} vector elements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for random simplices and triples (UNISOLV_SEED overrides it).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimplexArgs {
    /// Use the reference simplex (default).
    #[arg(long)]
    reference: bool,
    /// JSON file with one simplex or a list of them.
    #[arg(long, value_name = "FILE")]
    simplex: Option<PathBuf>,
    /// Number of seeded random simplices.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check unisolvence of the DOF system.
    Verify {
        /// Degree `N` or inclusive range `A..B`.
        #[arg(long)]
        k: String,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        simplex: SimplexArgs,
        /// Allow d = 3, k >= 3, whose answer is open.
        #[arg(long)]
        exploratory: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check the closed-form determinant of M(Z).
    Certificate {
        #[arg(long, default_value = "1..4")]
        k: String,
        /// Number of seeded random triples per degree.
        #[arg(long, value_name = "N", default_value_t = 10)]
        random: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce the three-dimensional counterexample for k = 2.
    Counterexample {
        #[command(flatten)]
        common: Common,
    },
    /// Export the nodal basis and its biorthogonality certificate.
    DualBasis {
        #[arg(long)]
        k: String,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        simplex: SimplexArgs,
        #[arg(long)]
        exploratory: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the whole verification suite.
    Report {
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, value_name = "K", default_value_t = 3)]
        max_k: u32,
        /// Random simplices per 2D degree (and triples per certificate degree, at least 10).
        #[arg(long, value_name = "N", default_value_t = 0)]
        random: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn config(command: &'static str, seed: u64) -> CliResult<RunConfig> {
    Ok(RunConfig { command, k: None, d: None, source: None, seed: resolve_seed(seed)?, exploratory: false })
}

fn run(cli: Cli) -> CliResult<(Outcome, Option<PathBuf>)> {
    match cli.command {
        Command::Verify { k, d, simplex, exploratory, common } => {
            let (k, d) = (KRange::parse(&k)?, check_dim(d)?);
            let source = SimplexSource::from_flags(simplex.reference, simplex.simplex, simplex.random)?;
            let cfg = RunConfig { k: Some(k), d: Some(d), source: Some(source.clone()), exploratory, ..config("verify", common.seed)? };
            Ok((commands::verify(&cfg, k, d, &source)?, common.out))
        }
        Command::Certificate { k, random, common } => {
            let k = KRange::parse(&k)?;
            if random == 0 {
                return Err(CliError::usage("--random needs a count of at least 1"));
            }
            let cfg = RunConfig { k: Some(k), ..config("certificate", common.seed)? };
            Ok((commands::certificate(&cfg, k, random)?, common.out))
        }
        Command::Counterexample { common } => Ok((commands::counterexample(&config("counterexample", common.seed)?)?, common.out)),
        Command::DualBasis { k, d, simplex, exploratory, common } => {
            let (kr, d) = (KRange::parse(&k)?, check_dim(d)?);
            let source = SimplexSource::from_flags(simplex.reference, simplex.simplex, simplex.random)?;
            let cfg = RunConfig { k: Some(kr), d: Some(d), source: Some(source.clone()), exploratory, ..config("dual-basis", common.seed)? };
            Ok((commands::dual(&cfg, kr.single()?, d, &source)?, common.out))
        }
        Command::Report { all: _, max_k, random, common } => {
            let cfg = RunConfig { k: Some(KRange { first: 1, last: max_k.max(1) }), ..config("report", common.seed)? };
            Ok((commands::report(&cfg, max_k, random)?, common.out))
        }
    }
}

fn emit(outcome: &Outcome, out: Option<PathBuf>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(&outcome.document)
        .map_err(|e| CliError::failure(format!("cannot serialize report: {e}")))?;
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            for line in &outcome.summary {
                println!("{line}");
            }
            println!("report written to {}", path.display());
        }
        None => {
            let mut stderr = std::io::stderr().lock();
            for line in &outcome.summary {
                let _ = writeln!(stderr, "{line}");
            }
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(cli).and_then(|(outcome, out)| {
        emit(&outcome, out)?;
        match outcome.failure {
            Some(f) if !outcome.ok => Err(CliError::failure(f)),
            _ => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
