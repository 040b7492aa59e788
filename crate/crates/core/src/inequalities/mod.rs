//! Turán-type inequalities for the cubic overpartition sequence: exact
//! hyperbolicity decisions, integer scans, and interval-checked bounds.

mod bm;
mod jensen;
mod poly;
mod ratio;
mod scans;

pub use bm::{bm_objective, solve_bm};
pub use jensen::{
    hermite, hermite_limit_check, hermite_shift_scale, jensen, turan_threshold, HermiteCheck,
    JensenPolynomial, TuranThreshold,
};
pub use poly::{is_hyperbolic, IntPolynomial};
pub use ratio::{ratio_bounds, RatioBoundReport};
pub use scans::{
    general_log_concavity_scan, log_concavity_failures, subadditivity_scan, SubadditivityReport,
};
