use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{OutputFormat, RunConfig, CACHE_ENV};

#[derive(Debug, Parser)]
#[command(name = "overcubic", version, about = "Cubic overpartition values, series checks and inequality scans")]
pub struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 40)]
    pub precision: u32,
    /// Terms per series for Bessel-series evaluations.
    #[arg(long, global = true, default_value_t = 8)]
    pub terms: u64,
    /// Upper end of scans that take a horizon.
    #[arg(long, global = true, default_value_t = 2000)]
    pub horizon: u64,
    /// Table cache file.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            precision_digits: self.precision,
            terms_per_series: self.terms,
            horizon: self.horizon,
            cache_path: self.cache.clone(),
            output_format: self.format,
            threads: self.threads,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Qseries,
    Rademacher,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Section {
    Rows,
    Tally,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a(n).
    Value {
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Qseries)]
        method: Method,
    },
    /// Recompute the published five-term partial sums and the a(100) tally.
    VerifyTable {
        /// Restrict to one of the two published tables.
        #[arg(long, value_enum)]
        only: Option<Section>,
    },
    /// Exact or interval scans over ranges of n.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// Check one transformation identity numerically.
    Transformcheck {
        /// f, f2_odd, f2_even, f4_odd, f4_2mod4, f4_0mod4, A_odd, A_2mod4 or A_0mod4
        case: String,
        h: i64,
        k: u64,
        /// Real part of z; must be positive.
        z: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_imag: f64,
        /// Largest residual accepted.
        #[arg(long, default_value_t = 1e-15)]
        tolerance: f64,
    },
    /// Solve for B_m.
    Bm {
        m: u32,
        /// Published value to compare against, to within 10^-3.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Interval checks of the Bessel bounds and the main-term windows.
    Bounds {
        /// Check the I_2 bounds at s (integer or fraction such as 51/2).
        #[arg(long)]
        bessel: Vec<String>,
        /// Check M(n)(1 - n^-e) <= a(n) <= M(n)(1 + n^-e) at n.
        #[arg(long)]
        window: Vec<u64>,
        /// The exponent e for --window, integer or fraction.
        #[arg(long, default_value = "6")]
        exponent: String,
    },
    /// Manage the table cache.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScanKind {
    /// n with a(n)^2 <= a(n-1) a(n+1).
    Logconcavity {
        #[arg(long, default_value_t = 1)]
        from: u64,
        /// Defaults to the horizon.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Last non-hyperbolic Jensen polynomial of each degree up to the horizon.
    Turan {
        #[arg(long, required = true, num_args = 1..)]
        d: Vec<u32>,
    },
    /// Pairs with a(n) a(m) < a(n+m) or equality.
    Subadd {
        /// Defaults to the horizon.
        #[arg(long)]
        max_sum: Option<u64>,
    },
    /// Pairs 1 < m < n with a(n)^2 <= a(n-m) a(n+m).
    Genlogconcavity {
        /// Defaults to the horizon.
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Two-sided ratio bounds for each n in the range.
    Ratio {
        #[arg(long, default_value_t = 2363)]
        from: u64,
        /// Defaults to the larger of --from and the horizon.
        #[arg(long)]
        to: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableAction {
    /// Compute a(0..=nmax) and write the cache file.
    Build { nmax: u64 },
    /// Verify the cache checksum and recompute its values.
    Check,
}
