//! Command-line front end: evaluation, tabulation, sampling and the
//! verification suite, with JSON, CSV and text reports.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 an evaluation row
//! errored or the arguments were invalid, 3 the report could not be written.

use std::io::Write;
use std::path::Path;

pub mod args;
pub mod commands;
pub mod grid;
pub mod report;

pub use commands::{run_eval, run_sample, run_verify, FuncSpec};
pub use report::{render, Format, Record, ReportDocument, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ROW_ERROR: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] umbra_core::UmbraError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            _ => EXIT_ROW_ERROR,
        }
    }
}

/// Writes `text` to `path`, or stdout when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
