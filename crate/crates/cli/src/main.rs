//! `szego`: command-line front end for szego-core.

mod commands;
mod config;
mod mp;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use szego_core::ErrorClass;

use crate::config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] szego_core::Error),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn class(&self) -> ErrorClass {
        match self {
            CliError::Core(e) => e.class(),
            CliError::Config(_) | CliError::Io(_) => ErrorClass::Config,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.class() {
            ErrorClass::Config => 2,
            ErrorClass::Domain => 3,
            ErrorClass::Numerical => 4,
        }
    }

    /// Variant name of the underlying error.
    fn name(&self) -> String {
        match self {
            CliError::Core(e) => {
                let d = format!("{e:?}");
                d.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("").to_string()
            }
            CliError::Config(_) => "Config".into(),
            CliError::Io(_) => "Io".into(),
        }
    }
}

#[derive(Serialize)]
struct ErrorRecord {
    error: String,
    class: &'static str,
    message: String,
}

#[derive(Parser)]
#[command(name = "szego", version, about = "Szegő polynomials for analytic weights on the unit circle")]
struct Cli {
    /// JSON file with default values for any option
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// τ, Fourier coefficients of log w and of F, and ρ̂ as JSON
    Dump(RunConfig),
    /// Φ_n with error bounds on the points of --grid
    Phi(RunConfig),
    /// Verblunsky coefficients from the series representation
    Verblunsky(RunConfig),
    /// Leading coefficients κ_n and κ_n²
    Kappa(RunConfig),
    /// Moment/recurrence reference values
    Oracle(RunConfig),
    /// Series values against the oracle, with bound checks
    Compare(RunConfig),
    /// Zeros of the oracle Φ_n
    Zeros(RunConfig),
    /// Exterior and pole-residue approximations of Φ_n
    Asymp(RunConfig),
    /// Clock statistics of the zeros near the critical circle
    Clock(RunConfig),
    /// Saddle points and α_n asymptotics for essential weights
    Saddle(RunConfig),
    /// Ψ_n − Ψ_n(t_+) on a grid
    PsiGrid(RunConfig),
    /// SVG of zeros, guide circles and poles
    PlotZeros(RunConfig),
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("SZEGO_THREADS") {
        let k: usize = v.trim().parse().map_err(|_| CliError::Config(format!("SZEGO_THREADS='{v}' is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    let (f, flags): (fn(&RunConfig) -> Result<(), CliError>, RunConfig) = match cli.cmd {
        Cmd::Dump(c) => (commands::dump, c),
        Cmd::Phi(c) => (commands::phi, c),
        Cmd::Verblunsky(c) => (commands::verblunsky, c),
        Cmd::Kappa(c) => (commands::kappa, c),
        Cmd::Oracle(c) => (commands::oracle, c),
        Cmd::Compare(c) => (commands::compare_cmd, c),
        Cmd::Zeros(c) => (commands::zeros, c),
        Cmd::Asymp(c) => (commands::asymp, c),
        Cmd::Clock(c) => (commands::clock, c),
        Cmd::Saddle(c) => (commands::saddle, c),
        Cmd::PsiGrid(c) => (commands::psi_grid_cmd, c),
        Cmd::PlotZeros(c) => (commands::plot_zeros, c),
    };
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?.overlay(&flags),
        None => flags,
    };
    f(&cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let rec = ErrorRecord {
                error: e.name(),
                class: match e.class() {
                    ErrorClass::Config => "config",
                    ErrorClass::Domain => "domain",
                    ErrorClass::Numerical => "numerical",
                },
                message: e.to_string(),
            };
            eprintln!("{}", serde_json::to_string(&rec).unwrap_or_else(|_| e.to_string()));
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(szego_core::Error::OnContour).exit_code(), 3);
        assert_eq!(CliError::Core(szego_core::Error::LostPositivity { n: 3 }).exit_code(), 4);
        assert_eq!(CliError::Core(szego_core::Error::BadRadius { r: 2.0, rho: 0.5 }).exit_code(), 2);
    }

    #[test]
    fn error_names() {
        let e = CliError::Core(szego_core::Error::ConvergenceConditionViolated { n: 1, r: 0.7, n_min: 9 });
        assert_eq!(e.name(), "ConvergenceConditionViolated");
        assert_eq!(CliError::Core(szego_core::Error::OnContour).name(), "OnContour");
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        let c = Cli::try_parse_from(["szego", "psi-grid", "--weight", "w.json", "--n", "30", "--window", "-0.2,1.2,-0.7,0.7"]).unwrap();
        match c.cmd {
            Cmd::PsiGrid(r) => assert_eq!(r.window().unwrap(), Some([-0.2, 1.2, -0.7, 0.7])),
            _ => panic!("wrong subcommand"),
        }
    }
}
