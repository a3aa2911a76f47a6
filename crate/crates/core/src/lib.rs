//! Prime density toolkit.
//!
//! Exact prime counting (segmented sieve and a sublinear combinatorial
//! counter), the classical estimators of π(x) (x/ln x, Legendre, li, Riemann
//! R), the correction function f(x) = ln x − x/π(x) with its fitted closed
//! form, a Levenberg–Marquardt engine to re-derive that fit, and report
//! builders that diff the published comparison tables against live
//! computation.

pub mod approx;
pub mod cli;
pub mod error;
pub mod fitting;
pub mod fmodel;
pub mod numfmt;
pub mod paper_data;
pub mod primecount;
pub mod report;

pub use error::{Error, Result};
