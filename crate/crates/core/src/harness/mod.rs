//! Command-line experiments and their result files.

pub mod config;
mod experiments;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

pub use config::{Experiment, OutputFormat, RunConfig, SeriesKind, Settings, SweepKernel};
pub use experiments::{
    limit_reached, osc_test_function, osc_test_hamiltonian, run, sweep, sweep_grid,
    well_test_function, RunReport, Verdict, INTERVAL_TOLERANCE, LIMIT_TOLERANCE, MEHLER_AGREEMENT,
    MONOTONE_WINDOW,
};
pub use output::{ResultRow, SweepRow};

/// Abel/Euler summation experiments on divergent series and regulated kernels.
#[derive(Debug, Parser)]
#[command(name = "eulersum", version, about, allow_negative_numbers = true)]
pub struct Cli {
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// TOML file with keys named like the long flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

/// Parses `args`, runs the experiment, prints the summary and returns the exit status.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let settings = match &cli.config {
        Some(path) => match Settings::load(path) {
            Ok(file) => cli.settings.or(file),
            Err(e) => {
                eprintln!("error: {}: {e}", e.name());
                return 1;
            }
        },
        None => cli.settings,
    };
    let cfg = match RunConfig::resolve(cli.experiment, settings) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            return 1;
        }
    };
    let report = run(&cfg);
    println!("{}", report.summary);
    report.status
}
