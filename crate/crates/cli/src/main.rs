//! `harmvol`: tables, tensor evaluation and verification for pointed
//! harmonic volumes of w² = z^(2g+2) − 1.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

mod config;
mod engines;
mod eval;
mod render;
mod table;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use config::{Cli, Command, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] harmvol_core::Error),
    /// The numeric engine could not reach the requested tolerances.
    #[error("numeric engine: {0}")]
    Numeric(harmvol_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => 1,
            _ => 2,
        }
    }
}

fn require_g(g: Option<usize>) -> Result<usize, CliError> {
    g.ok_or_else(|| CliError::Usage("--g is required".into()))
}

/// Returns the rendered output and whether every check passed.
fn dispatch(cli: Cli) -> Result<(String, bool, RunConfig), CliError> {
    match cli.command {
        Command::Table(c) => {
            let cfg = RunConfig::new("table", &c, require_g(c.g)?, None, Format::Markdown)?;
            let tables = table::build(&cfg)?;
            let ok = tables.iter().all(|t| t.disagreements == 0);
            Ok((table::render(&cfg, tables)?, ok, cfg))
        }
        Command::Eval { file, common } => {
            let (a, cfg) = eval::load(&file, &common)?;
            let rows = eval::build(&cfg, &a)?;
            let ok = rows.iter().all(|r| r.values.agree);
            Ok((eval::render(&cfg, &a, rows)?, ok, cfg))
        }
        Command::Verify { samples, common } => {
            let g = require_g(common.g)?;
            let cfg = RunConfig::new("verify", &common, g, Some(samples), Format::Json)?;
            let suites = verify::run(&cfg)?;
            let (text, ok) = verify::render(&cfg, suites)?;
            Ok((text, ok, cfg))
        }
    }
}

fn emit(text: &str, cfg: &RunConfig) -> std::io::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok((text, ok, cfg)) => {
            if let Err(e) = emit(&text, &cfg) {
                eprintln!("harmvol: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("harmvol: verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("harmvol: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
