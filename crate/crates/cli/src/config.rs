use std::path::PathBuf;

use clap::ValueEnum;

use crate::{CliError, Result};

/// Environment variable naming the default table cache file.
pub const CACHE_ENV: &str = "OVERCUBIC_TABLE_CACHE";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub precision_digits: u32,
    pub terms_per_series: u64,
    pub horizon: u64,
    pub cache_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    /// Worker threads for the scans; rayon's default when `None`.
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_digits: 40,
            terms_per_series: 8,
            horizon: 2000,
            cache_path: None,
            output_format: OutputFormat::Json,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_digits < 15 {
            return Err(CliError::Usage(format!(
                "--precision must be at least 15 digits, got {}",
                self.precision_digits
            )));
        }
        if self.horizon == 0 {
            return Err(CliError::Usage("--horizon must be at least 1".into()));
        }
        if self.terms_per_series == 0 {
            return Err(CliError::Usage("--terms must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        Ok(())
    }
}
