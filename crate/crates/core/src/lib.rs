//! Exact engine for non-existence bounds on k-uniform states in `(C^q)^n`.
//!
//! The crate is layered bottom-up: [`exact`] arithmetic, [`enumerators`] and
//! their transforms, the [`lp`] feasibility program with certificates, the
//! [`closed_form`] thresholds, the [`shadow`] refinement, the [`asymptotic`]
//! rate bound, and finally [`report`] and [`tables`] which combine them.

pub mod asymptotic;
pub mod closed_form;
pub mod enumerators;
pub mod error;
pub mod exact;
pub mod lp;
pub mod report;
pub mod shadow;
pub mod tables;

pub use error::{Error, Result};
pub use exact::Rational;
