//! Closed-form exponential of 3x3 matrices.
//!
//! Each spectral case yields an algebra of auxiliary matrices built from A and
//! its roots alone: a nilpotent N with N^3 = O (triple root), a projection P
//! with a complementary nilpotent (double plus simple root), or a projection P
//! with an involution-like J acting on the complement of Im(P) (complex pair
//! or three distinct reals). The exponential is then a two- or three-term
//! scalar combination of these fixed matrices.

use crate::spectrum::{char_poly3, classify3, Spectrum3};
use crate::Error;
use matexp_linalg::Mat3;

/// Spectral decomposition of a 3x3 matrix: classified roots, the projection P
/// onto the simple-root eigenspace (zero in the triple case), the nilpotent or
/// involution-like part, and the defects of every defining identity.
#[derive(Debug, Clone)]
pub struct Decomp3 {
    pub spectrum: Spectrum3,
    /// P; the zero matrix in the triple case.
    pub proj: Mat3,
    /// N (triple, double-simple) or J (complex-real, three-distinct).
    pub nil_or_j: Mat3,
    /// N^2, stored in the triple case so each t evaluation skips a square;
    /// zero otherwise.
    pub nil_sq: Mat3,
    /// l0 or alpha.
    pub shift: f64,
    /// l3 - shift; 0 in the triple case.
    pub gap: f64,
    /// named max-abs defects of the algebraic identities of the case.
    pub residuals: Vec<(&'static str, f64)>,
}

impl Decomp3 {
    pub fn case_name(&self) -> &'static str {
        self.spectrum.case_name()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, (_, r)| m.max(*r))
    }
}

/// Build the per-case algebra: P, N or J, and the stored residuals.
///
/// Fails with `DivisionHazard` when a projection denominator such as
/// (l3-a)^2 - b^2 falls below tol*scale^2 (root separation failure), and with
/// `DegenerateDecomposition` when any algebraic defect exceeds
/// 1e-6 * max(1, max_abs(A))^3 (misclassification near a case boundary).
pub fn decompose3(a: &Mat3, tol: f64) -> Result<Decomp3, Error> {
    let p = char_poly3(a);
    let spectrum = classify3(&p, tol);
    let i = Mat3::IDENTITY;
    let scale = p.scale();
    let hazard_floor = tol * scale * scale;

    let d = match spectrum {
        Spectrum3::Triple { l0 } => {
            let n = a.sub(&i.scale(l0));
            let nsq = n.mul(&n);
            let residuals = vec![("N^3", nsq.mul(&n).max_abs())];
            Decomp3 {
                spectrum,
                proj: Mat3::ZERO,
                nil_or_j: n,
                nil_sq: nsq,
                shift: l0,
                gap: 0.0,
                residuals,
            }
        }
        Spectrum3::DoubleSimple { l0, l3 } => {
            let b = l3 - l0;
            if b * b <= hazard_floor {
                return Err(Error::DivisionHazard { denom: b * b });
            }
            let shifted = a.sub(&i.scale(l0));
            let proj = shifted.mul(&shifted).scale(1.0 / (b * b));
            let n = shifted.sub(&proj.scale(b));
            let residuals = vec![
                ("P^2-P", proj.mul(&proj).sub(&proj).max_abs()),
                ("PN", proj.mul(&n).max_abs()),
                ("NP", n.mul(&proj).max_abs()),
                ("N^2", n.mul(&n).max_abs()),
            ];
            Decomp3 {
                spectrum,
                proj,
                nil_or_j: n,
                nil_sq: Mat3::ZERO,
                shift: l0,
                gap: b,
                residuals,
            }
        }
        Spectrum3::ComplexReal { alpha, omega, l3 } => {
            let b = l3 - alpha;
            let denom = b * b + omega * omega;
            if denom <= hazard_floor {
                return Err(Error::DivisionHazard { denom });
            }
            let shifted = a.sub(&i.scale(alpha));
            let proj = shifted
                .mul(&shifted)
                .add(&i.scale(omega * omega))
                .scale(1.0 / denom);
            let j = shifted.sub(&proj.scale(b)).scale(1.0 / omega);
            let complement = i.sub(&proj);
            let residuals = vec![
                ("P^2-P", proj.mul(&proj).sub(&proj).max_abs()),
                ("PJ", proj.mul(&j).max_abs()),
                ("JP", j.mul(&proj).max_abs()),
                ("J^2+(I-P)", j.mul(&j).add(&complement).max_abs()),
            ];
            Decomp3 {
                spectrum,
                proj,
                nil_or_j: j,
                nil_sq: Mat3::ZERO,
                shift: alpha,
                gap: b,
                residuals,
            }
        }
        Spectrum3::ThreeDistinct { alpha, beta, l3, .. } => {
            let b = l3 - alpha;
            let denom = b * b - beta * beta;
            if denom.abs() <= hazard_floor {
                return Err(Error::DivisionHazard { denom });
            }
            let shifted = a.sub(&i.scale(alpha));
            let proj = shifted
                .mul(&shifted)
                .sub(&i.scale(beta * beta))
                .scale(1.0 / denom);
            let j = shifted.sub(&proj.scale(b)).scale(1.0 / beta);
            let complement = i.sub(&proj);
            let residuals = vec![
                ("P^2-P", proj.mul(&proj).sub(&proj).max_abs()),
                ("PJ", proj.mul(&j).max_abs()),
                ("JP", j.mul(&proj).max_abs()),
                ("J^2-(I-P)", j.mul(&j).sub(&complement).max_abs()),
            ];
            Decomp3 {
                spectrum,
                proj,
                nil_or_j: j,
                nil_sq: Mat3::ZERO,
                shift: alpha,
                gap: b,
                residuals,
            }
        }
    };

    let bound = 1e-6 * 1f64.max(a.max_abs()).powi(3);
    let residual = d.max_residual();
    if residual > bound {
        return Err(Error::DegenerateDecomposition { residual, bound });
    }
    Ok(d)
}

fn finite_or_overflow(m: Mat3, t: f64) -> Result<Mat3, Error> {
    if m.rows().iter().flatten().all(|x| x.is_finite()) {
        Ok(m)
    } else {
        Err(Error::Overflow { t })
    }
}

/// e^{tA} by the case-matching closed form:
/// e^{l0 t}(I + tN + t^2/2 N^2),
/// e^{l0 t}(I - P + tN) + e^{l3 t}P,
/// e^{at}[(cos wt)(I-P) + (sin wt)J] + e^{l3 t}P or
/// e^{at}[(cosh bt)(I-P) + (sinh bt)J] + e^{l3 t}P.
pub fn expm3(d: &Decomp3, t: f64) -> Result<Mat3, Error> {
    assert!(t.is_finite(), "t must be finite");
    if t == 0.0 {
        // the three-term forms reconstruct I as (I - P) + P, which is exact
        // only in the absence of rounding; e^{0A} = I deserves exactness
        return Ok(Mat3::IDENTITY);
    }
    let i = Mat3::IDENTITY;
    let m = match d.spectrum {
        Spectrum3::Triple { l0 } => {
            let e = (l0 * t).exp();
            i.add(&d.nil_or_j.scale(t))
                .add(&d.nil_sq.scale(t * t / 2.0))
                .scale(e)
        }
        Spectrum3::DoubleSimple { l0, l3 } => {
            let (e0, e3) = ((l0 * t).exp(), (l3 * t).exp());
            i.sub(&d.proj)
                .add(&d.nil_or_j.scale(t))
                .scale(e0)
                .add(&d.proj.scale(e3))
        }
        Spectrum3::ComplexReal { alpha, omega, l3 } => {
            let (e0, e3) = ((alpha * t).exp(), (l3 * t).exp());
            i.sub(&d.proj)
                .scale(e0 * (omega * t).cos())
                .add(&d.nil_or_j.scale(e0 * (omega * t).sin()))
                .add(&d.proj.scale(e3))
        }
        Spectrum3::ThreeDistinct { l1, l2, l3, .. } => {
            // e^{at} cosh(bt) and e^{at} sinh(bt) from the root exponentials
            // directly, so no intermediate factor overflows on its own
            let (e1, e2, e3) = ((l1 * t).exp(), (l2 * t).exp(), (l3 * t).exp());
            let (c, s) = ((e1 + e2) / 2.0, (e1 - e2) / 2.0);
            i.sub(&d.proj)
                .scale(c)
                .add(&d.nil_or_j.scale(s))
                .add(&d.proj.scale(e3))
        }
    };
    finite_or_overflow(m, t)
}

/// The alternate three-term form of the distinct-real exponential:
/// 1/2 e^{l1 t}(I+J-P) + 1/2 e^{l2 t}(I-J-P) + e^{l3 t}P. Algebraically
/// identical to `expm3`; kept as an internal cross-check.
pub fn alt_expm3_case4(d: &Decomp3, t: f64) -> Result<Mat3, Error> {
    let Spectrum3::ThreeDistinct { l1, l2, l3, .. } = d.spectrum else {
        return Err(Error::WrongCase {
            expected: "three-distinct",
            got: d.case_name(),
        });
    };
    if t == 0.0 {
        return Ok(Mat3::IDENTITY);
    }
    let i = Mat3::IDENTITY;
    let plus = i.add(&d.nil_or_j).sub(&d.proj);
    let minus = i.sub(&d.nil_or_j).sub(&d.proj);
    let m = plus
        .scale((l1 * t).exp() / 2.0)
        .add(&minus.scale((l2 * t).exp() / 2.0))
        .add(&d.proj.scale((l3 * t).exp()));
    finite_or_overflow(m, t)
}
