//! Command-line surface for the `overcubic` crate: argument parsing, table
//! caching and report rendering. The binary in `main.rs` is a thin wrapper
//! around [`run`].

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use thiserror::Error;

pub use args::Cli;
pub use config::{OutputFormat, RunConfig, CACHE_ENV};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] overcubic::Error),
    #[error("cache file {path}: {reason}")]
    Cache { path: String, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use overcubic::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::ZeroModulus
                | E::NotCoprime { .. }
                | E::WrongResidueClass { .. }
                | E::Domain(_)
                | E::InvalidArgument(_)
                | E::ZeroPolynomial,
            ) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Execute a parsed command line and return its report.
pub fn run(cli: &Cli) -> Result<Report> {
    let config = cli.config();
    config.validate()?;
    if let Some(threads) = config.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    commands::dispatch(&cli.command, &config)
}
