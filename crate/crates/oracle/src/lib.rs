//! Truncated power-series reference implementations for matrix functions.
//!
//! These are used only for verification of the closed-form kernels. They share
//! nothing with the closed-form path except the basic matrix arithmetic: this
//! crate depends on `matexp-linalg` alone, so the layering is enforced by the
//! crate graph.
//!
//! Strategy: scale the argument until its max-abs norm is at most 0.5, sum the
//! Taylor series to a tight tolerance, then undo the scaling by repeated
//! squaring (for the exponential) or by the double-angle / addition formulas
//! (for cos/sin and cosh/sinh). Summing unscaled arguments directly loses
//! digits catastrophically once the norm exceeds a few units.

use matexp_linalg::{ComplexMat2, Mat2, Mat3, Sign};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("series did not converge: last term norm {term_norm:e} after {terms} terms")]
    NotConverged { term_norm: f64, terms: usize },
}

/// Convergence knobs for the series evaluations.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    pub target_tol: f64,
    pub max_terms: usize,
    pub squarings_cap: u32,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            target_tol: 1e-13,
            max_terms: 64,
            squarings_cap: 40,
        }
    }
}

impl SeriesConfig {
    fn validate(&self) {
        assert!(self.target_tol > 0.0, "target_tol must be positive");
        assert!(self.max_terms >= 8, "max_terms must be at least 8");
    }
}

/// Number of halvings needed to bring `norm` down to 0.5, capped.
fn scaling_steps(norm: f64, cap: u32) -> u32 {
    let mut s = 0;
    let mut n = norm;
    while n > 0.5 && s < cap {
        n /= 2.0;
        s += 1;
    }
    s
}

/// Which scalar function `trig_series` should mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
    Cosh,
    Sinh,
}

macro_rules! series_impls {
    ($expm:ident, $mat:ty) => {
        /// e^{tA} by truncated Taylor series with scaling and squaring.
        pub fn $expm(a: &$mat, t: f64, cfg: &SeriesConfig) -> Result<$mat, OracleError> {
            cfg.validate();
            assert!(t.is_finite(), "t must be finite");
            let ta = a.scale(t);
            let s = scaling_steps(ta.max_abs(), cfg.squarings_cap);
            let m = ta.scale(0.5f64.powi(s as i32));
            let mut sum = <$mat>::IDENTITY;
            let mut term = <$mat>::IDENTITY;
            let mut converged = false;
            for n in 1..=cfg.max_terms {
                term = term.mul(&m).scale(1.0 / n as f64);
                sum = sum.add(&term);
                if term.max_abs() <= cfg.target_tol {
                    converged = true;
                    break;
                }
            }
            if !converged && term.max_abs() > 1e3 * cfg.target_tol {
                return Err(OracleError::NotConverged {
                    term_norm: term.max_abs(),
                    terms: cfg.max_terms,
                });
            }
            for _ in 0..s {
                sum = sum.mul(&sum);
            }
            Ok(sum)
        }
    };
}

series_impls!(expm_series2, Mat2);
series_impls!(expm_series3, Mat3);

/// Sums the even (cos-like) and odd (sin-like) series of the scaled argument
/// simultaneously; `hyper` selects cosh/sinh instead of cos/sin.
fn trig_pair_scaled(
    m: &Mat2,
    hyper: bool,
    cfg: &SeriesConfig,
) -> Result<(Mat2, Mat2), OracleError> {
    let msq = m.mul(m);
    let mut even = Mat2::IDENTITY;
    let mut odd = *m;
    // term of degree 2n (even) and 2n+1 (odd)
    let mut even_term = Mat2::IDENTITY;
    let mut odd_term = *m;
    let mut converged = false;
    for n in 1..=cfg.max_terms {
        let k = (2 * n) as f64;
        even_term = even_term.mul(&msq).scale(1.0 / (k * (k - 1.0)));
        odd_term = odd_term.mul(&msq).scale(1.0 / (k * (k + 1.0)));
        if !hyper && n % 2 == 1 {
            even = even.sub(&even_term);
            odd = odd.sub(&odd_term);
        } else {
            even = even.add(&even_term);
            odd = odd.add(&odd_term);
        }
        let tnorm = even_term.max_abs().max(odd_term.max_abs());
        if tnorm <= cfg.target_tol {
            converged = true;
            break;
        }
    }
    if !converged {
        let tnorm = even_term.max_abs().max(odd_term.max_abs());
        if tnorm > 1e3 * cfg.target_tol {
            return Err(OracleError::NotConverged {
                term_norm: tnorm,
                terms: cfg.max_terms,
            });
        }
    }
    Ok((even, odd))
}

/// cos A, sin A, cosh A or sinh A of a 2x2 matrix by direct series, with the
/// double-angle recursion (cos 2X = 2 cos^2 X - I, sin 2X = 2 sin X cos X and
/// their hyperbolic counterparts) undoing the argument scaling.
pub fn trig_series(a: &Mat2, which: TrigKind, cfg: &SeriesConfig) -> Result<Mat2, OracleError> {
    cfg.validate();
    let hyper = matches!(which, TrigKind::Cosh | TrigKind::Sinh);
    let s = scaling_steps(a.max_abs(), cfg.squarings_cap);
    let m = a.scale(0.5f64.powi(s as i32));
    let (mut c, mut sn) = trig_pair_scaled(&m, hyper, cfg)?;
    for _ in 0..s {
        // cos 2X = 2 cos^2 X - I and cosh 2X = 2 cosh^2 X - I share one form;
        // only the series signs above differ between the two families.
        let new_c = c.mul(&c).scale(2.0).sub(&Mat2::IDENTITY);
        let new_s = sn.mul(&c).scale(2.0);
        c = new_c;
        sn = new_s;
    }
    Ok(match which {
        TrigKind::Cos | TrigKind::Cosh => c,
        TrigKind::Sin | TrigKind::Sinh => sn,
    })
}

/// e^{+iA} or e^{-iA} by summing (±iA)^n / n! with explicit real/imaginary
/// bookkeeping, scaled and complex-squared back up.
pub fn expim_series(a: &Mat2, sign: Sign, cfg: &SeriesConfig) -> Result<ComplexMat2, OracleError> {
    cfg.validate();
    let s = scaling_steps(a.max_abs(), cfg.squarings_cap);
    let m = a.scale(sign.factor() * 0.5f64.powi(s as i32));
    // i*M has re = O, im = M; powers cycle through the quadrants.
    let im = ComplexMat2::new(Mat2::ZERO, m);
    let mut sum = ComplexMat2::new(Mat2::IDENTITY, Mat2::ZERO);
    let mut term = ComplexMat2::new(Mat2::IDENTITY, Mat2::ZERO);
    let mut converged = false;
    for n in 1..=cfg.max_terms {
        term = term.mul(&im);
        term = ComplexMat2::new(
            term.re.scale(1.0 / n as f64),
            term.im.scale(1.0 / n as f64),
        );
        sum = sum.add(&term);
        if term.max_abs() <= cfg.target_tol {
            converged = true;
            break;
        }
    }
    if !converged && term.max_abs() > 1e3 * cfg.target_tol {
        return Err(OracleError::NotConverged {
            term_norm: term.max_abs(),
            terms: cfg.max_terms,
        });
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use matexp_linalg::Vec2;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(
            expm_series2(&Mat2::ZERO, 3.7, &cfg()).unwrap(),
            Mat2::IDENTITY
        );
        assert_eq!(
            expm_series3(&Mat3::ZERO, -1.2, &cfg()).unwrap(),
            Mat3::IDENTITY
        );
    }

    #[test]
    fn nilpotent_truncates() {
        // N^2 = O, so e^N = I + N with no truncation error at all
        let n = Mat2::new(4.0, 2.0, -8.0, -4.0);
        assert!(n.mul(&n).max_abs() == 0.0);
        let e = expm_series2(&n, 1.0, &cfg()).unwrap();
        let expected = Mat2::IDENTITY.add(&n);
        assert!(e.sub(&expected).max_abs() < 1e-13);
    }

    #[test]
    fn projection_formula() {
        // P^2 = P, so e^{tP} = I - P + e^t P
        let p = Mat3::from_rows([[1.0, -1.0, 1.0], [2.0, -2.0, 2.0], [2.0, -2.0, 2.0]]);
        assert!(p.mul(&p).sub(&p).max_abs() == 0.0);
        let e = expm_series3(&p, 1.0, &cfg()).unwrap();
        let expected = Mat3::IDENTITY.sub(&p).add(&p.scale(1f64.exp()));
        assert!(e.sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn scalar_matrix_reduces_to_scalar_exp() {
        let a = Mat2::IDENTITY.scale(1.5);
        let e = expm_series2(&a, 2.0, &cfg()).unwrap();
        let expected = 3f64.exp();
        assert!((e.at(0, 0) - expected).abs() / expected < 1e-13);
        assert!(e.at(0, 1).abs() < 1e-13);
    }

    #[test]
    fn trig_of_zero() {
        let c = cfg();
        assert_eq!(trig_series(&Mat2::ZERO, TrigKind::Cos, &c).unwrap(), Mat2::IDENTITY);
        assert_eq!(trig_series(&Mat2::ZERO, TrigKind::Sin, &c).unwrap(), Mat2::ZERO);
        assert_eq!(trig_series(&Mat2::ZERO, TrigKind::Cosh, &c).unwrap(), Mat2::IDENTITY);
        assert_eq!(trig_series(&Mat2::ZERO, TrigKind::Sinh, &c).unwrap(), Mat2::ZERO);
    }

    #[test]
    fn trig_scalar_half_pi() {
        let a = Mat2::IDENTITY.scale(std::f64::consts::FRAC_PI_2);
        let s = trig_series(&a, TrigKind::Sin, &cfg()).unwrap();
        let c = trig_series(&a, TrigKind::Cos, &cfg()).unwrap();
        assert!(s.sub(&Mat2::IDENTITY).max_abs() < 1e-13);
        assert!(c.max_abs() < 1e-13);
    }

    #[test]
    fn cosh_from_exponentials() {
        let a = Mat2::new(1.2, -0.7, 2.3, 0.4);
        let c = trig_series(&a, TrigKind::Cosh, &cfg()).unwrap();
        let ep = expm_series2(&a, 1.0, &cfg()).unwrap();
        let en = expm_series2(&a, -1.0, &cfg()).unwrap();
        let half_sum = ep.add(&en).scale(0.5);
        assert!(c.sub(&half_sum).max_abs() < 1e-12);
    }

    #[test]
    fn expim_conjugate_symmetry() {
        let a = Mat2::new(0.3, 1.0, -2.0, 0.9);
        let plus = expim_series(&a, Sign::Plus, &cfg()).unwrap();
        let minus = expim_series(&a, Sign::Minus, &cfg()).unwrap();
        assert!(plus.re.sub(&minus.re).max_abs() < 1e-12);
        assert!(plus.im.add(&minus.im).max_abs() < 1e-12);
    }

    #[test]
    fn expim_matches_scalar() {
        // A = theta * I reduces to e^{i theta}
        let theta = 0.8;
        let a = Mat2::IDENTITY.scale(theta);
        let e = expim_series(&a, Sign::Plus, &cfg()).unwrap();
        assert!((e.re.at(0, 0) - theta.cos()).abs() < 1e-13);
        assert!((e.im.at(0, 0) - theta.sin()).abs() < 1e-13);
    }

    #[test]
    fn semigroup_property() {
        let a = Mat2::new(0.7, -1.3, 0.2, -0.5);
        let (s, t) = (0.8, -1.7);
        let both = expm_series2(&a, s + t, &cfg()).unwrap();
        let split = expm_series2(&a, s, &cfg())
            .unwrap()
            .mul(&expm_series2(&a, t, &cfg()).unwrap());
        assert!(both.sub(&split).max_abs() / both.max_abs().max(1.0) < 1e-10);
    }

    #[test]
    fn apply_matches_columns() {
        let a = Mat2::new(1.0, 2.0, 0.0, -1.0);
        let e = expm_series2(&a, 0.5, &cfg()).unwrap();
        let v = e.apply(&Vec2::new(1.0, 0.0));
        assert_eq!(v.components(), [e.at(0, 0), e.at(1, 0)]);
    }
}
