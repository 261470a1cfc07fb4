//! The `entcert` command-line front end.
//!
//! Exit codes: `0` certified or feasible, `2` inconclusive or infeasible,
//! `1` error.

mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{fmt_sig, CertificateReport};

use crate::error::{Error, Result};
use crate::tolerance;
use report::Outcome;

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "entcert",
    version,
    about = "Certify bounded entanglement depth and statistical compatibility by inverting positive maps"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Positivity tolerance for eigenvalue tests.
    #[arg(long, global = true, default_value_t = tolerance::PSD)]
    pub tol: f64,
    /// Stdout format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for batch inputs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Write the certificate report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub emit_certificate: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BhCheck {
    /// Closed-form inverse of the two-term map.
    Inverse,
    /// Boundary criterion with β on the region edge.
    BoundaryBeta,
    /// Boundary criterion with α on the region edge.
    BoundaryAlpha,
    /// Large-parameter criterion on `σ − σ̃/2`.
    Asymptotic,
    /// Large-parameter criterion on `σ̃ − σ/2`.
    AsymptoticTilde,
    /// Invariance of `σ` under the partial transpose.
    Kraus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth certificate from the reduction-map inverse.
    Depth {
        /// Operator files.
        #[arg(long, required = true, num_args = 1..)]
        state: Vec<PathBuf>,
        /// Size of the split-off group; the bound is depth N − n.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Bi-separability across a single-qubit cut from Breuer–Hall-type maps.
    Bh {
        #[arg(long, required = true, num_args = 1..)]
        state: Vec<PathBuf>,
        #[arg(long)]
        party: usize,
        #[arg(long, value_enum, default_value_t = BhCheck::Inverse)]
        check: BhCheck,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Boundary parameter (must exceed 2/3).
        #[arg(long)]
        t: Option<f64>,
    },
    /// Separability from the four-term map inverse.
    Bh4 {
        #[arg(long, required = true, num_args = 1..)]
        state: Vec<PathBuf>,
        /// Comma-separated parties of the subset A.
        #[arg(long, value_delimiter = ',', required = true)]
        parties: Vec<usize>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        /// Split of the region slack; minimal split when omitted.
        #[arg(long, requires = "b")]
        a: Option<f64>,
        #[arg(long, requires = "a")]
        b: Option<f64>,
    },
    /// Depth N − 1 from a mixture of four-term maps.
    Mixture {
        #[arg(long, required = true, num_args = 1..)]
        state: Vec<PathBuf>,
        /// JSON `{weights, params: [{alpha, beta, gamma, delta}]}`.
        #[arg(long)]
        params: PathBuf,
    },
    /// Generic superoperator inversion of a map given as a term list.
    Invert {
        #[arg(long)]
        state: PathBuf,
        /// JSON `{terms: [{coeff, kind, subset?}]}`.
        #[arg(long)]
        map: PathBuf,
        /// Write the preimage here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Separability of a two- or three-qubit symmetric-sector state.
    Sym {
        #[arg(long, required = true, num_args = 1..)]
        state: Vec<PathBuf>,
    },
    /// Separability of a diagonal symmetric state.
    DsCheck {
        /// JSON `{N, d, p}`.
        #[arg(long, required = true, num_args = 1..)]
        state: Vec<PathBuf>,
        /// Map parameter; both range endpoints are tried when omitted.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
    },
    /// Admissible α range for diagonal symmetric states.
    DsRange {
        #[arg(long = "N", required_unless_present = "table1")]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Emit the qubit table for N = 2..5 as CSV.
        #[arg(long)]
        table1: bool,
    },
    /// Grid of α ranges over qudit dimensions, with the PPT status of the
    /// symmetric identity.
    DdRange {
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
    },
    /// Collective-spin separability inequalities.
    Toth {
        /// JSON `{N, Jx, Jy, Jz, Jx2, Jy2, Jz2}`.
        #[arg(long)]
        moments: PathBuf,
    },
    /// Scaling factor of collective-spin correlations and the β interval.
    TothAlpha {
        #[arg(long)]
        moments: PathBuf,
    },
    /// Membership of a probability table in the local polytope.
    Lhvm {
        /// JSON `{scenario, values}`.
        #[arg(long)]
        probabilities: PathBuf,
    },
    /// Scaling factor of Bell correlators and the β interval.
    LhvmAlpha {
        /// JSON `{scenario, entries}`.
        #[arg(long)]
        correlators: PathBuf,
    },
    /// Scaling factor in the permutationally invariant projection.
    PiAlpha {
        /// JSON `{N, S0, S1, S00, S01, S11}`.
        #[arg(long)]
        pi: PathBuf,
    },
    /// Scaling factor of a moment relaxation `Γ₀ + α Σ Sᵢ Γᵢ ⪰ 0`.
    SdpAlpha {
        /// JSON `{dimension, matrices}`.
        #[arg(long)]
        gamma: PathBuf,
        /// Correlators from a PI file.
        #[arg(long, conflicts_with = "s")]
        pi: Option<PathBuf>,
        /// Correlators given inline.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        s: Option<Vec<f64>>,
        /// Number of parties, needed with `--s` for the β interval.
        #[arg(long = "N")]
        n: Option<usize>,
        /// Uniform bound on the relaxation gap.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Qubit α ranges for N = 2..5 as CSV.
    Table1,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Depth { .. } => "depth",
            Command::Bh { .. } => "bh",
            Command::Bh4 { .. } => "bh4",
            Command::Mixture { .. } => "mixture",
            Command::Invert { .. } => "invert",
            Command::Sym { .. } => "sym",
            Command::DsCheck { .. } => "ds-check",
            Command::DsRange { .. } => "ds-range",
            Command::DdRange { .. } => "dd-range",
            Command::Toth { .. } => "toth",
            Command::TothAlpha { .. } => "toth-alpha",
            Command::Lhvm { .. } => "lhvm",
            Command::LhvmAlpha { .. } => "lhvm-alpha",
            Command::PiAlpha { .. } => "pi-alpha",
            Command::SdpAlpha { .. } => "sdp-alpha",
            Command::Table1 => "table1",
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_CERTIFIED };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

/// Runs a parsed command, printing to stdout; returns the exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    if !(cli.global.tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("--tol must be nonnegative, got {}", cli.global.tol)));
    }
    if cli.global.jobs == 0 {
        return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    let outcomes = pool.install(|| commands::dispatch(&cli.command, &cli.global))?;
    let command = cli.command.name();
    let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let positive = outcomes.iter().all(|o| o.positive);
    print_outcomes(&outcomes, command, &timestamp, cli.global.format)?;
    if let Some(path) = &cli.global.emit_certificate {
        let reports: Vec<CertificateReport> =
            outcomes.iter().cloned().map(|o| o.into_report(command, &timestamp)).collect();
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])?
        } else {
            serde_json::to_string_pretty(&reports)?
        };
        std::fs::write(path, text + "\n")?;
    }
    Ok(if positive { EXIT_CERTIFIED } else { EXIT_INCONCLUSIVE })
}

fn print_outcomes(outcomes: &[Outcome], command: &str, timestamp: &str, format: Format) -> Result<()> {
    match format {
        Format::Text => {
            for o in outcomes {
                for line in &o.text {
                    println!("{line}");
                }
            }
        }
        Format::Csv => {
            if let Some(first) = outcomes.first() {
                println!("{}", first.header.join(","));
            }
            for o in outcomes {
                for row in &o.rows {
                    println!("{}", row.join(","));
                }
            }
        }
        Format::Structured => {
            let reports: Vec<CertificateReport> =
                outcomes.iter().cloned().map(|o| o.into_report(command, timestamp)).collect();
            println!("{}", serde_json::to_string_pretty(&reports)?);
        }
    }
    Ok(())
}
