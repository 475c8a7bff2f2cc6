//! `g6q`: verification sweeps, factorizations and state constructions for
//! the two-qubit model in `G⁺(6)`.
//!
//! Exit codes: 0 pass, 1 a verification failed, 2 malformed input,
//! 3 numeric failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use g6q_core::cartan::FactorTarget;
use g6q_core::selftest::DEFAULT_SEED;

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "g6q", version, about = "Two-qubit geometric algebra in G(6,0): checks and decompositions")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Pass threshold for `kak` and `factor-check` residuals.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bracket sweep of the fifteen generators against the matrix oracle.
    VerifyIso,
    /// Conjugation table of Q or Q' with a diff against the reference table.
    Tables {
        #[arg(long, value_enum)]
        op: TableOp,
    },
    /// State ideal, density operator and entropies from Schmidt parameters.
    Schmidt {
        #[arg(long)]
        params: PathBuf,
        /// Base-2 logarithms for the entropies.
        #[arg(long)]
        log2: bool,
    },
    /// KAK decomposition of a 4x4 unitary given as matrix JSON.
    Kak {
        #[arg(long)]
        unitary: PathBuf,
    },
    /// Compose the stated factorizations of Q, Q' or the swap.
    FactorCheck {
        #[arg(long, value_parser = parse_target)]
        which: FactorTarget,
    },
    /// Choi report for the Kraus sum M_k, optionally applied to a density.
    Kraus {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        k: u8,
        /// Density operator as multivector JSON or 4x4 matrix JSON.
        #[arg(long)]
        rho: Option<PathBuf>,
    },
    /// The full acceptance suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableOp {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qprime")]
    Qprime,
}

fn parse_target(s: &str) -> Result<FactorTarget, String> {
    s.parse().map_err(|e: g6q_core::Error| e.to_string())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::VerifyIso => commands::verify_iso(),
        Command::Tables { op } => commands::tables(match op {
            TableOp::Q => "Q",
            TableOp::Qprime => "Qprime",
        }),
        Command::Schmidt { params, log2 } => commands::schmidt(params, *log2),
        Command::Kak { unitary } => commands::kak(unitary, cli.tol),
        Command::FactorCheck { which } => commands::factor_check(*which, cli.tol),
        Command::Kraus { k, rho } => commands::kraus(usize::from(*k), rho.as_deref()),
        Command::Selftest => commands::selftest(cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let body = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                outcome.text.clone()
            };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
