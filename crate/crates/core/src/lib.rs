//! Exact decomposition of Toeplitz-type operators into weighted shifts,
//! together with finite-evidence classifiers for the operator classes that
//! show up around subnormality.
//!
//! The library works over exact rational arithmetic (GMP via [`rug`])
//! wherever the mathematics permits, and falls back to high-precision
//! floating point (MPFR) only where square roots or logarithms force it:
//!
//! - [`seq`] — weight-squared sequences, moments, Schur products and powers,
//!   forward differences, linear combinations of shifts.
//! - [`grws`] — geometrically regular and homographic weight generators,
//!   parameter-plane sector location with predicted properties, and
//!   recovery/verification of finitely atomic representing measures.
//! - [`classify`] — hyponormality and k-hyponormality via Hankel moment
//!   matrices, complete/log-complete alternation, hyperexpansivity,
//!   moment-infinite-divisibility sampling, contractivity.
//! - [`decomp`] — symbol-to-decomposition engines for H-Toeplitz adjoints on
//!   the Bergman space, Toeplitz operators on weighted Bergman spaces and on
//!   generalized derivative Hardy spaces, plus sums of compatible symbols.
//! - [`oracle`] — independent direct basis-action computations used to
//!   cross-check every closed-form weight the decompositions produce.
//! - [`report`] — the versioned JSON report schema shared with the CLI.
//! - [`verify`] — the named verification checks behind `opshift verify`.
//!
//! Every "holds" verdict produced by the classifiers is stamped with the
//! range it was checked on; the library never claims an infinite family of
//! inequalities from a finite computation.

pub mod classify;
pub mod config;
pub mod decomp;
pub mod error;
pub mod grws;
pub mod oracle;
pub mod precise;
pub mod report;
pub mod seq;
pub mod verify;

pub use error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = rug::Rational;
/// Exact integer scalar.
pub type Int = rug::Integer;

/// Shorthand for building a `Rat` from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::from((num, den))
}

/// Shorthand for an integer-valued `Rat`.
pub fn rat_int(v: i64) -> Rat {
    Rat::from(v)
}
