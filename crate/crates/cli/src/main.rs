//! `plateau`: classify p-ary functions by their Walsh spectra and check the
//! weight distributions of the linear codes built from them.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plateau::classifier::ClassifyError;
use plateau::code::{CodeError, DEFAULT_BUDGET};
use plateau::minimality::MinimalityError;
use plateau::search::SearchError;

#[derive(Debug, Parser)]
#[command(name = "plateau", version, about = "Walsh spectra of p-ary plateaued functions and their linear codes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to this file instead of stdout (`search` appends).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Upper bound on elementary operations for enumerations.
    #[arg(long, global = true, value_name = "OPS", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for random search.
    #[arg(long, global = true, value_name = "U64", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walsh spectrum and plateau classification of `Tr(Ψ(x))`.
    Analyze {
        spec: PathBuf,
        /// Also write the full spectrum as JSON.
        #[arg(long, value_name = "PATH")]
        spectrum: Option<PathBuf>,
    },
    /// Parameters and weight distribution of the code of `Tr(Ψ(x))`.
    BuildCode {
        spec: PathBuf,
        /// Write every codeword, one per line.
        #[arg(long, value_name = "PATH")]
        emit_codewords: Option<PathBuf>,
    },
    /// Classify, predict, enumerate and compare; exit 1 on any mismatch.
    Verify { spec: PathBuf },
    /// Enumerate `Tr(Σ cᵢ x^{eᵢ})` over a fixed exponent template.
    Search(SearchArgs),
    /// Print a predicted weight distribution.
    Tables(TablesArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub m: u32,
    /// Modulus coefficients from the constant term up, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub modulus: Vec<u32>,
    /// Exponent template, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u64>,
    /// Sample this many coefficient tuples instead of sweeping all of them.
    #[arg(long, value_name = "COUNT")]
    pub random: Option<u64>,
    /// Keep only functions with this amplitude.
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, value_enum, default_value_t = RegularityFilter::Any)]
    pub regularity: RegularityFilter,
    /// Stop after this many hits.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegularityFilter {
    Any,
    Regular,
    WeaklyRegular,
    /// Regular or weakly regular.
    Weak,
    NonWeaklyRegular,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub r: u32,
    /// Sign of the Walsh values (ignored for p = 2).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true, value_parser = parse_sign)]
    pub epsilon: i8,
    /// Sign of the dual's Walsh transform when m + r is odd; defaults to `--epsilon`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    pub epsilon_g: Option<i8>,
    /// Whether the dual is balanced on the Walsh support.
    #[arg(long)]
    pub balanced: bool,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(format!("expected +1 or -1, got {s:?}")),
    }
}

/// Process exit status for a failed run.
fn failure_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CodeError>() {
            if matches!(e, CodeError::BudgetExceeded { .. }) {
                return 3;
            }
        }
        if let Some(MinimalityError::BudgetExceeded { .. }) = cause.downcast_ref::<MinimalityError>() {
            return 3;
        }
        if let Some(SearchError::BudgetExceeded { .. }) = cause.downcast_ref::<SearchError>() {
            return 3;
        }
        if let Some(ClassifyError::NotPlateaued(_)) = cause.downcast_ref::<ClassifyError>() {
            return 4;
        }
    }
    2
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|c| {
        let kind = c
            .downcast_ref::<std::io::Error>()
            .map(std::io::Error::kind)
            .or_else(|| c.downcast_ref::<serde_json::Error>().and_then(serde_json::Error::io_error_kind));
        kind == Some(std::io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(failure_code(&e))
        }
    }
}
