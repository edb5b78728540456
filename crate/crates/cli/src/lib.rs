//! The `netstrings` command line: argument parsing, run-configuration
//! files, CSV tables and SVG figures around the `netstrings` library.

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod config;
pub mod svg;

use args::{Cli, Command};

/// Parses `argv` (program name first) and runs the selected command.
pub fn run(argv: Vec<OsString>) -> anyhow::Result<()> {
    let argv = config::expand(argv)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Metrics(a) => commands::metrics(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Fit(a) => commands::fit_cmd(a),
        Command::Plot(a) => commands::plot(a),
    }
}

/// Entry point for the binary: diagnostics to standard error, exit code 1
/// on any failure (2 for usage errors).
pub fn main_entry(argv: impl IntoIterator<Item = OsString>) -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(argv.into_iter().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("netstrings: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
