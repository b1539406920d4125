//! Reports on Siegel-Veech constants of square-tiled surfaces in H(2).
//!
//! The binary is a thin wrapper around [`run`]; everything it prints is
//! produced by [`commands`] and rendered by [`report`].

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod report;

pub use config::{Command, Format, RunConfig};
pub use error::CliError;

/// Rendered report plus the first failed consistency check, if any.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub failure: Option<CliError>,
}

/// Validates `config`, runs it on a pool of `config.jobs` threads and renders
/// the report.
pub fn run(config: &RunConfig) -> Result<Output, CliError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::Resource(format!("cannot start worker pool: {e}")))?;
    let report = pool.install(|| commands::execute(config))?;
    let text = report.render(config.format)?;
    let failure = report.failures.first().map(|f| CliError::Consistency(f.clone()));
    Ok(Output { text, failure })
}
