//! Fixed-size dense real matrices and vectors for 2x2 and 3x3 problems.
//!
//! Everything here is immutable after construction and every operation is a
//! pure function, so values can be shared freely across threads. Entries are
//! required to be finite at construction time; the arithmetic itself never
//! checks again.
//!
//! Characteristic polynomial convention used downstream: we work with the
//! monic form, `f(l) = l^2 - tr*l + det` for 2x2 and
//! `f(l) = l^3 - tr*l^2 + minor_sum*l - det` for 3x3. This differs from
//! `det(A - l*I)` by the sign `(-1)^n`; the roots are identical.

mod mat2;
mod mat3;
mod vec;

pub use mat2::Mat2;
pub use mat3::Mat3;
pub use vec::{Vec2, Vec3};

use thiserror::Error;

/// Errors from the basic matrix kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    /// Determinant below the scale-aware singularity floor.
    #[error("matrix is numerically singular (det = {det:e})")]
    Singular { det: f64 },
}

/// Sign selector for the `e^{+iA}` / `e^{-iA}` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A 2x2 complex matrix stored as a pair of real matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat2 {
    pub re: Mat2,
    pub im: Mat2,
}

impl ComplexMat2 {
    pub fn new(re: Mat2, im: Mat2) -> Self {
        ComplexMat2 { re, im }
    }

    pub fn conjugate(&self) -> Self {
        ComplexMat2 {
            re: self.re,
            im: self.im.scale(-1.0),
        }
    }

    /// (a + bi)(c + di) = (ac - bd) + (ad + bc)i
    pub fn mul(&self, other: &ComplexMat2) -> ComplexMat2 {
        ComplexMat2 {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn add(&self, other: &ComplexMat2) -> ComplexMat2 {
        ComplexMat2 {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.re.max_abs().max(self.im.max_abs())
    }
}

pub(crate) fn assert_finite(entries: &[f64]) {
    assert!(
        entries.iter().all(|x| x.is_finite()),
        "non-finite entry in construction: {entries:?}"
    );
}

/// Scale-aware singularity floor used by `invert`: |det| <= 1e-12 * max(1, max_abs^n).
pub(crate) fn singularity_floor(max_abs: f64, n: u32) -> f64 {
    1e-12 * 1f64.max(max_abs.powi(n as i32))
}
