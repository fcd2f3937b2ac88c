//! Exact Möbius sums over arithmetic progressions, together with numerical
//! verification of the analytic objects that control them: Dirichlet
//! characters, Beurling–Selberg majorants/minorants, the explicit formula
//! for L-function zeros, zero-window statistics and typicality
//! classification, elementary inequality checks, and the conditional bound
//! envelope.
//!
//! The sieve side is integer-exact and serves as ground truth; the analytic
//! side carries explicit error estimates wherever an assertion is made, and
//! reports ratios (never assertions) for bounds with unknown implied
//! constants.

// Negated float comparisons like `!(x > 0.0)` are used deliberately to
// reject NaN alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod bounds;
pub mod characters;
pub mod data;
pub mod error;
pub mod selberg;
pub mod sieve;
pub mod util;

pub mod zeros;

pub use error::{Error, Result};
