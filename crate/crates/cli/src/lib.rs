//! Command-line front end for `mlwkb`: spectra, reference comparisons,
//! validity diagnostics and plot data, written as CSV or JSON.
//!
//! All inputs are in units with ħ = 1 and, by default, m = 1/2.

pub mod commands;
pub mod config;

use std::io::Write;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::config::Flags;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] mlwkb::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                mlwkb::Error::Domain(_)
                | mlwkb::Error::InvalidQuantumNumber(_)
                | mlwkb::Error::NoReferenceAvailable(_) => 1,
                _ => 2,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mlwkb", version, about = "WKB spectra with a minimal length (units: ħ = 1, m = 1/2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve levels and compare with closed-form references
    Spectrum(Flags),
    /// Tabulate every applicable reference and the predicted gaps
    Compare(Flags),
    /// Local metric and wavelength-window verdicts per level
    Validity(Flags),
    /// Wavefunction samples or an energy series for external plotting
    Plotdata(Flags),
}

/// Rendered command output and the number of rows that failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub failures: usize,
}

impl Output {
    pub fn exit_code(&self) -> u8 {
        if self.failures > 0 {
            2
        } else {
            0
        }
    }
}

pub fn run(cli: Cli) -> Result<(Output, config::RunConfig), CliError> {
    let (flags, cmd): (Flags, fn(&config::RunConfig) -> Result<Output, CliError>) = match cli.command {
        Command::Spectrum(f) => (f, commands::spectrum),
        Command::Compare(f) => (f, commands::compare),
        Command::Validity(f) => (f, commands::validity),
        Command::Plotdata(f) => (f, commands::plotdata),
    };
    let cfg = flags.resolve()?;
    let out = cmd(&cfg)?;
    Ok((out, cfg))
}

/// Full process behaviour minus the exit: returns the code to exit with.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match run(cli) {
        Ok((out, cfg)) => {
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, out.text.as_bytes()),
                None => stdout.write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "i/o error: {e}");
                return 1;
            }
            if out.failures > 0 {
                let _ = writeln!(stderr, "{} row(s) failed", out.failures);
            }
            out.exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
