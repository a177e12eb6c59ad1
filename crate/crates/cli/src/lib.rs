//! Batch driver: reads a run configuration, runs the requested stages of
//! the pipeline and writes a JSON or CSV document.
//!
//! Exit codes: 0 when every check passed, 1 when a check or a pipeline stage
//! failed, 2 for usage, configuration and output errors.

pub mod config;
pub mod report;
pub mod run;

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

pub use config::{ConfigError, Overrides, Preset, RunConfig};
pub use report::Document;
pub use run::{run, Command, RunError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "superalg", version, about = "Cubic symmetry algebras: derivation, spectrum and cross-checks")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, value_name = "INT")]
    pub p_max: Option<u32>,
    /// Length scale, an exact rational such as `3/2`.
    #[arg(long, value_name = "RATIONAL")]
    pub a: Option<String>,
    /// Interior grid points of the middle well.
    #[arg(long, value_name = "INT")]
    pub grid: Option<u32>,
    /// Largest energy kept by the numeric solver.
    #[arg(long, value_name = "REAL")]
    pub cutoff: Option<f64>,
    /// Largest accepted numeric-versus-predicted deviation.
    #[arg(long, value_name = "REAL")]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; for `all --format csv`, a directory receiving one file per table.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl Args {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            preset: self.preset,
            p_max: self.p_max.map(i64::from),
            a: self.a.clone(),
            grid: self.grid.map(i64::from),
            cutoff: self.cutoff,
            tol: self.tol,
        }
    }
}

fn output_error(path: &Path, e: std::io::Error) -> RunError {
    RunError::Output(format!("{}: {e}", path.display()))
}

/// Writes `doc` in the requested format.
pub fn emit(doc: &Document, format: Format, out: Option<&Path>) -> Result<(), RunError> {
    let io = |e: std::io::Error| out.map(|p| output_error(p, e)).unwrap_or_else(|| RunError::Output(String::from("stdout")));
    match format {
        Format::Json => report::write_output(out, &doc.to_json()).map_err(io),
        Format::Csv => {
            let tables = doc.csv_tables();
            match (tables.as_slice(), out) {
                ([(_, table)], _) => report::write_output(out, table).map_err(io),
                (_, Some(dir)) => {
                    std::fs::create_dir_all(dir).map_err(|e| output_error(dir, e))?;
                    for (stem, table) in &tables {
                        let path = dir.join(format!("{stem}.csv"));
                        std::fs::write(&path, table).map_err(|e| output_error(&path, e))?;
                    }
                    Ok(())
                }
                (_, None) => Err(RunError::Usage("csv output with several tables needs --out DIR".into())),
            }
        }
    }
}

/// Runs one invocation and returns the exit code; diagnostics go to stderr.
pub fn execute(args: &Args) -> i32 {
    let result = config::load(args.config.as_deref(), &args.overrides())
        .map_err(RunError::from)
        .and_then(|cfg| run(args.command, &cfg))
        .and_then(|doc| emit(&doc, args.format, args.out.as_deref()).map(|()| doc));
    match result {
        Ok(doc) => {
            for c in doc.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED: {}{}", c.name, c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default());
            }
            if doc.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("superalg: {e}");
            e.exit_code()
        }
    }
}
