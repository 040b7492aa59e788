//! Exact and rigorously bounded computations for cubic overpartitions.
//!
//! The crate has two independent routes to `a(n)`, the number of cubic
//! overpartitions of `n`: an exact big-integer q-series expansion
//! ([`qseries`]) and the convergent Rademacher-type series ([`rademacher`])
//! evaluated in ball arithmetic ([`analytic`]). On top of these sit the
//! inequality checks of [`inequalities`] and the numerical verification of the
//! modular transformation formulas in [`transformcheck`].

pub mod analytic;
pub mod dedekind;
pub mod inequalities;
pub mod kloosterman;
pub mod qseries;
pub mod rademacher;
pub mod transformcheck;
mod error;

pub use error::{Error, Result};
