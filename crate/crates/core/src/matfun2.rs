//! Closed-form matrix functions of 2x2 matrices.
//!
//! Every 2x2 real matrix splits as A = l0*I + N (repeated root, N nilpotent),
//! A = a*I + w*J with J^2 = -I (complex pair) or A = a*I + b*J with J^2 = I
//! (distinct real roots); the split follows from the Cayley-Hamilton theorem.
//! Each matrix function then reduces to two scalar function evaluations and a
//! scale-and-add. The decomposition is a separate cacheable value so that a
//! one-parameter family e^{tA} costs one scalar exp/cos/sin per t.

use crate::spectrum::{char_poly2, classify2, Spectrum2};
use crate::Error;
use matexp_linalg::{ComplexMat2, Mat2, Sign};

/// Spectral decomposition of a 2x2 matrix: the classified roots plus the
/// auxiliary matrix (N or J) and the defect of its defining identity.
#[derive(Debug, Clone, Copy)]
pub struct Decomp2 {
    pub spectrum: Spectrum2,
    /// N when the root is repeated, J otherwise.
    pub aux: Mat2,
    /// max-abs defect of N^2 = O, J^2 = -I or J^2 = I.
    pub residual: f64,
}

impl Decomp2 {
    pub fn case_name(&self) -> &'static str {
        self.spectrum.case_name()
    }
}

/// Split A according to its spectral case and verify the defining identity of
/// the auxiliary matrix. A defect beyond 1e-6 * max(1, max_abs(A)^2) signals a
/// misclassified spectrum (the tolerance band was hit) and is rejected rather
/// than silently answered.
pub fn decompose2(a: &Mat2, tol: f64) -> Result<Decomp2, Error> {
    let spectrum = classify2(&char_poly2(a), tol);
    let i = Mat2::IDENTITY;
    let (aux, residual) = match spectrum {
        Spectrum2::Repeated { l0 } => {
            let n = a.sub(&i.scale(l0));
            (n, n.mul(&n).max_abs())
        }
        Spectrum2::ComplexPair { alpha, omega } => {
            let j = a.sub(&i.scale(alpha)).scale(1.0 / omega);
            (j, j.mul(&j).add(&i).max_abs())
        }
        Spectrum2::DistinctReal { alpha, beta, .. } => {
            let j = a.sub(&i.scale(alpha)).scale(1.0 / beta);
            (j, j.mul(&j).sub(&i).max_abs())
        }
    };
    let bound = 1e-6 * 1f64.max(a.max_abs() * a.max_abs());
    if residual > bound {
        return Err(Error::DegenerateDecomposition { residual, bound });
    }
    Ok(Decomp2 {
        spectrum,
        aux,
        residual,
    })
}

fn finite_or_overflow(m: Mat2, t: f64) -> Result<Mat2, Error> {
    if m.rows().iter().flatten().all(|x| x.is_finite()) {
        Ok(m)
    } else {
        Err(Error::Overflow { t })
    }
}

/// e^{tA} by the case-matching closed form:
/// e^{l0 t}(I + tN), e^{at}[(cos wt)I + (sin wt)J] or
/// e^{at}[(cosh bt)I + (sinh bt)J].
pub fn expm2(d: &Decomp2, t: f64) -> Result<Mat2, Error> {
    assert!(t.is_finite(), "t must be finite");
    let i = Mat2::IDENTITY;
    let m = match d.spectrum {
        Spectrum2::Repeated { l0 } => {
            let e = (l0 * t).exp();
            i.add(&d.aux.scale(t)).scale(e)
        }
        Spectrum2::ComplexPair { alpha, omega } => {
            let e = (alpha * t).exp();
            i.scale(e * (omega * t).cos())
                .add(&d.aux.scale(e * (omega * t).sin()))
        }
        Spectrum2::DistinctReal { l1, l2, .. } => {
            // e^{at} cosh(bt) = (e^{l1 t} + e^{l2 t}) / 2 evaluated directly
            // from the roots so neither factor overflows on its own
            let (e1, e2) = ((l1 * t).exp(), (l2 * t).exp());
            let (c, s) = ((e1 + e2) / 2.0, (e1 - e2) / 2.0);
            i.scale(c).add(&d.aux.scale(s))
        }
    };
    finite_or_overflow(m, t)
}

/// cosh A: (cosh l0)I + (sinh l0)N, (cosh a)(cos w)I + (sinh a)(sin w)J or
/// (cosh a)(cosh b)I + (sinh a)(sinh b)J.
pub fn coshm2(d: &Decomp2) -> Result<Mat2, Error> {
    let i = Mat2::IDENTITY;
    let m = match d.spectrum {
        Spectrum2::Repeated { l0 } => i.scale(l0.cosh()).add(&d.aux.scale(l0.sinh())),
        Spectrum2::ComplexPair { alpha, omega } => i
            .scale(alpha.cosh() * omega.cos())
            .add(&d.aux.scale(alpha.sinh() * omega.sin())),
        Spectrum2::DistinctReal { alpha, beta, .. } => i
            .scale(alpha.cosh() * beta.cosh())
            .add(&d.aux.scale(alpha.sinh() * beta.sinh())),
    };
    finite_or_overflow(m, 1.0)
}

/// sinh A, same case structure as `coshm2` with cosh/sinh swapped.
pub fn sinhm2(d: &Decomp2) -> Result<Mat2, Error> {
    let i = Mat2::IDENTITY;
    let m = match d.spectrum {
        Spectrum2::Repeated { l0 } => i.scale(l0.sinh()).add(&d.aux.scale(l0.cosh())),
        Spectrum2::ComplexPair { alpha, omega } => i
            .scale(alpha.sinh() * omega.cos())
            .add(&d.aux.scale(alpha.cosh() * omega.sin())),
        Spectrum2::DistinctReal { alpha, beta, .. } => i
            .scale(alpha.sinh() * beta.cosh())
            .add(&d.aux.scale(alpha.cosh() * beta.sinh())),
    };
    finite_or_overflow(m, 1.0)
}

/// cos A: (cos l0)I - (sin l0)N, (cos a)(cosh w)I - (sin a)(sinh w)J or
/// (cos a)(cos b)I - (sin a)(sin b)J.
pub fn cosm2(d: &Decomp2) -> Mat2 {
    let i = Mat2::IDENTITY;
    match d.spectrum {
        Spectrum2::Repeated { l0 } => i.scale(l0.cos()).sub(&d.aux.scale(l0.sin())),
        Spectrum2::ComplexPair { alpha, omega } => i
            .scale(alpha.cos() * omega.cosh())
            .sub(&d.aux.scale(alpha.sin() * omega.sinh())),
        Spectrum2::DistinctReal { alpha, beta, .. } => i
            .scale(alpha.cos() * beta.cos())
            .sub(&d.aux.scale(alpha.sin() * beta.sin())),
    }
}

/// sin A: (sin l0)I + (cos l0)N, (sin a)(cosh w)I + (cos a)(sinh w)J or
/// (sin a)(cos b)I + (cos a)(sin b)J.
pub fn sinm2(d: &Decomp2) -> Mat2 {
    let i = Mat2::IDENTITY;
    match d.spectrum {
        Spectrum2::Repeated { l0 } => i.scale(l0.sin()).add(&d.aux.scale(l0.cos())),
        Spectrum2::ComplexPair { alpha, omega } => i
            .scale(alpha.sin() * omega.cosh())
            .add(&d.aux.scale(alpha.cos() * omega.sinh())),
        Spectrum2::DistinctReal { alpha, beta, .. } => i
            .scale(alpha.sin() * beta.cos())
            .add(&d.aux.scale(alpha.cos() * beta.sin())),
    }
}

/// e^{+iA} or e^{-iA}, assembled by expanding e^{+-i l} = cos l +- i sin l
/// against the bracketed matrix of each case. The upper signs go together.
pub fn expim2(d: &Decomp2, sign: Sign) -> ComplexMat2 {
    let s = sign.factor();
    let i = Mat2::IDENTITY;
    match d.spectrum {
        // e^{+-i l0}(I +- iN)
        Spectrum2::Repeated { l0 } => ComplexMat2::new(
            i.scale(l0.cos()).sub(&d.aux.scale(l0.sin())),
            i.scale(s * l0.sin()).add(&d.aux.scale(s * l0.cos())),
        ),
        // e^{+-i a}[(cosh w)I +- i(sinh w)J]
        Spectrum2::ComplexPair { alpha, omega } => ComplexMat2::new(
            i.scale(alpha.cos() * omega.cosh())
                .sub(&d.aux.scale(alpha.sin() * omega.sinh())),
            i.scale(s * alpha.sin() * omega.cosh())
                .add(&d.aux.scale(s * alpha.cos() * omega.sinh())),
        ),
        // e^{+-i a}[(cos b)I +- i(sin b)J]
        Spectrum2::DistinctReal { alpha, beta, .. } => ComplexMat2::new(
            i.scale(alpha.cos() * beta.cos())
                .sub(&d.aux.scale(alpha.sin() * beta.sin())),
            i.scale(s * alpha.sin() * beta.cos())
                .add(&d.aux.scale(s * alpha.cos() * beta.sin())),
        ),
    }
}
