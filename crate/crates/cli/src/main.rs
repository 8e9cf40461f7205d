use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rime_cli::commands::resolve_cap;
use rime_cli::{
    generate, report, verify, CliError, Format, Output, ReportOptions, SpecArgs, EXIT_USAGE,
};

#[derive(Parser)]
#[command(
    name = "rime",
    version,
    about = "Exact construction and verification of rime and Cremmer-Gervais R-matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and print it as a matrix document.
    Generate {
        family: String,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run checks against a family or a matrix document.
    Verify {
        #[arg(long, conflicts_with = "input")]
        family: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma-separated check names; defaults to every applicable check.
        #[arg(long)]
        checks: Option<String>,
    },
    /// Randomized sweep over every family with a summary table.
    Report {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        seed_value: u64,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Generate {
            family,
            spec,
            format,
        } => generate(&family, &spec, format),
        Command::Verify {
            family,
            input,
            spec,
            checks,
        } => verify(
            family.as_deref(),
            input.as_deref(),
            &spec,
            checks.as_deref(),
        ),
        Command::Report {
            n_max,
            seeds,
            seed_value,
        } => {
            let env = std::env::var("RIME_MAX_N").ok();
            let cap = resolve_cap(env.as_deref())?;
            report(&ReportOptions {
                n_max,
                seeds,
                seed_value,
                cap,
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("rime: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
