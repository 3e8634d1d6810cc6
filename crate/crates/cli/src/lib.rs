//! Command-line front end for `nbar`: reads a JSON problem, runs one library
//! task and reports the outcome as text or JSON.

pub mod report;
pub mod run;
pub mod spec;

use nbar::{Mode, Rational, Scalar, TruncationConfig};

pub use report::Report;
pub use spec::{Overrides, ProblemSpec, Task};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Library(#[from] nbar::Error),
}

impl CliError {
    /// 2 for anything malformed, 3 for a weight sign violation, 4 for a
    /// matrix class without a characterization.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(nbar::Error::Positivity { .. }) => 3,
            CliError::Library(nbar::Error::UnsupportedPair { .. }) => 4,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn render<T: Scalar>(report: &Report<T>, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

fn run_as<T: Scalar>(raw: serde_json::Value, ov: &Overrides, format: Format) -> Result<String, CliError> {
    let spec = ProblemSpec::<T>::from_value(raw, ov)?;
    Ok(render(&run::run(&spec)?, format))
}

/// Parses, runs and renders one problem spec given as JSON text.
pub fn execute(text: &str, ov: &Overrides, format: Format) -> Result<String, CliError> {
    let raw: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Spec(e.to_string()))?;
    match spec::resolve_mode(&raw, ov)? {
        Mode::Exact => run_as::<Rational>(raw, ov, format),
        Mode::Float => run_as::<f64>(raw, ov, format),
    }
}

fn repro_as<T: Scalar>(ov: &Overrides, format: Format) -> Result<String, CliError> {
    let defaults = TruncationConfig::<T>::default();
    let tol = match &ov.tol {
        Some(t) => T::parse(t)?,
        None => defaults.tol,
    };
    let cfg = TruncationConfig::new(
        ov.depth.unwrap_or(defaults.depth),
        ov.window.unwrap_or(defaults.window),
        tol,
    )?;
    Ok(render(&run::repro(&cfg)?, format))
}

pub fn execute_repro(ov: &Overrides, format: Format) -> Result<String, CliError> {
    match ov.mode.unwrap_or_default() {
        Mode::Exact => repro_as::<Rational>(ov, format),
        Mode::Float => repro_as::<f64>(ov, format),
    }
}
