use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coinvest_cli::{load_config, presets, run, verify, CliError, MethodChoice, EXIT_CHECKS_FAILED};

/// Coinvestment game solver: capacity, Shapley payoffs and settlements.
#[derive(Parser)]
#[command(name = "coinvest", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario and write records.csv, summary.json and meta.json.
    Run {
        /// Config file, or the name of a preset.
        config: String,
        /// Output directory (overrides `out`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 2 if any property check fails.
        #[arg(long)]
        strict: bool,
        /// Sampling seed (overrides `seed`).
        #[arg(long)]
        seed: Option<u64>,
        /// Shapley method (overrides `method`).
        #[arg(long, value_enum)]
        method: Option<MethodChoice>,
    },
    /// Run the property checks on a scenario and print one line per check.
    Verify { config: String },
    /// List the figure presets.
    Presets,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("coinvest: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Run {
            config,
            out,
            strict,
            seed,
            method,
        } => {
            let mut config = load_config(&config)?;
            if let Some(out) = out {
                config.out = out;
            }
            if let Some(seed) = seed {
                config.seed = seed;
            }
            if let Some(method) = method {
                config.method = method;
            }
            let outcome = run(&config, strict)?;
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            println!(
                "{} instance(s), {} failed check(s)",
                outcome.instances, outcome.failed_checks
            );
            Ok(0)
        }
        Command::Verify { config } => {
            let config = load_config(&config)?;
            let report = verify(&config)?;
            println!("{report}");
            Ok(if report.all_passed() {
                0
            } else {
                EXIT_CHECKS_FAILED
            })
        }
        Command::Presets => {
            for p in presets::PRESETS {
                println!("{:<8} {}", p.name, p.description());
            }
            Ok(0)
        }
    }
}
