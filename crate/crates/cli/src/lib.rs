//! Command-line harness for the hopfcheck suites.
//!
//! Each subcommand selects instances, runs their law checks in exact or
//! float arithmetic, and writes one [`ReportDocument`] as JSON, CSV or text.
//! Exit codes: 0 when every report matches its prediction, 1 when some
//! report does not, 2 on usage errors and unwritable output.

pub mod args;
pub mod document;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Command, Format, RunConfig, SEED_ENV};
pub use document::{emit, Overall, ReportDocument};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Output { .. } => 2,
            CliError::Check(_) => 1,
        }
    }
}

/// Runs the configured suite, on a pool of `config.workers` threads when set.
pub fn run(config: &RunConfig) -> Result<ReportDocument, CliError> {
    let started = Instant::now();
    let reports = match config.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| CliError::Check(e.to_string()))?
            .install(|| suites::run_suite(config))?,
        None => suites::run_suite(config)?,
    };
    Ok(ReportDocument::new(
        config.clone(),
        reports,
        started.elapsed(),
    ))
}

/// Writes the rendered document to `config.output`, or to standard output.
pub fn write_document(doc: &ReportDocument, config: &RunConfig) -> Result<(), CliError> {
    let bytes = emit(doc, config.format)?;
    match &config.output {
        Some(path) => std::fs::write(path, bytes).map_err(|source| CliError::Output {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|source| CliError::Output {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// The whole program: parse, run, write. Returns the exit code.
pub fn main_with<I, T>(args: I, seed_env: Option<String>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = RunConfig::from_command(&cli.command, seed_env.as_deref()).and_then(|config| {
        let doc = run(&config)?;
        write_document(&doc, &config)?;
        Ok(doc)
    });
    match result {
        Ok(doc) => {
            for r in doc.unexpected() {
                eprintln!("unexpected: {} on {} is {:?}", r.law, r.instance, r.status);
            }
            doc.exit_code()
        }
        Err(e) => {
            eprintln!("hopfcheck: {e}");
            if let CliError::Usage(_) = e {
                eprintln!("Try 'hopfcheck {} --help'.", cli.command.name());
            }
            e.exit_code()
        }
    }
}
