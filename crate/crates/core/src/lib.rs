//! Certification, exact evaluation and numerical verification of the
//! generalized Nesbitt family
//!
//! ```text
//!   Σ aᵢ^m / (t·s − r·aᵢ^p)^β        with  s = Σ aᵢ^p
//! ```
//!
//! compared against the power form `n^(β+1−m/p) / (nt−r)^β · s^(m/p−β)` and
//! the sum form `(nt−r)^(−β) · Σ aᵢ^(m−βp)`.
//!
//! The crate is organised by role:
//!
//! * [`params`], [`point`], [`expr`]: domain types and exact evaluators.
//! * [`classify`]: parameter-only case analysis producing [`Certificate`]s.
//! * [`oracle`]: seeded randomized verification, counterexample search and
//!   the classical reference inequalities.
//! * [`extremum`]: kernel convexity profiles, the semiconcave-semiconvex
//!   reduction, the `S_β` infimum and the `β₀` threshold.
//! * [`zeta`]: real-argument Hurwitz-Lerch zeta with certified truncation.
//! * [`suite`]: the acceptance fixture set shared by the test suite and CLI.
//!
//! Monte Carlo style loops run through [`Exec`], which is data-parallel
//! (rayon) when the default `parallel` feature is enabled.

pub mod classify;
pub mod error;
pub mod exec;
pub mod expr;
pub mod extremum;
pub mod num;
pub mod oracle;
pub mod params;
pub mod point;
pub mod suite;
pub mod zeta;

pub use classify::{
    classify_all, classify_power_form, classify_sum_form, classify_sum_form_lower,
    classify_sum_form_upper, critical_roots, degenerate_equality, CaseLabel, Certificate,
    Classification, Direction, ParabolaKernel, Roots, Theorem,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use expr::{
    evaluate, lhs_sum, rhs_power_form, rhs_sum_form, windowed_lhs, windowed_rhs, EvalResult,
    WindowSum,
};
pub use params::ParamTuple;
pub use point::{power_sum, PointVec};
