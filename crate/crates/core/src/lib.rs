//! Closed-form matrix functions of 2x2 and 3x3 real matrices, computed from
//! characteristic roots alone, plus the pieces built on top of them:
//! eigenvector / canonical-form extraction and closed-form solving of
//! x'(t) = A x(t).
//!
//! The spectral classification (repeated root, complex pair, distinct reals,
//! and the mixed 3x3 cases) drives everything: `spectrum` computes and
//! classifies the characteristic roots, `matfun2` / `matfun3` build the
//! auxiliary algebra (nilpotent N, involution-like J, projection P) and
//! evaluate the per-case formulas, `canonical` reads eigenvectors and
//! transition matrices off the same auxiliary matrices, and `solver` turns
//! e^{tA} x0 into a finite mode expansion.
//!
//! All functions are pure and all values immutable; the crate is thread-safe
//! throughout.

pub mod canonical;
mod error;
pub mod matfun2;
pub mod matfun3;
pub mod solver;
pub mod spectrum;

pub use error::Error;

/// Default relative classification tolerance. Deciding "equal roots" too late
/// explodes the 1/beta, 1/omega, 1/(l3-l0) factors in the closed forms, so a
/// thin misclassification band is traded for bounded amplification.
pub const DEFAULT_TOL: f64 = 1e-9;
