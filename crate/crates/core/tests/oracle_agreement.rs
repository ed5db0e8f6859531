//! Property tests pitting the closed forms against the independent power
//! series, plus the algebraic identities every matrix function must satisfy.

use matexp_core::matfun2::{coshm2, cosm2, decompose2, expim2, expm2, sinhm2, sinm2};
use matexp_core::matfun3::{alt_expm3_case4, decompose3, expm3};
use matexp_core::spectrum::{
    char_poly2, char_poly3, classification_margin2, classification_margin3, classify2, classify3,
    Spectrum2, Spectrum3,
};
use matexp_core::DEFAULT_TOL;
use matexp_linalg::{Mat2, Mat3, Sign};
use matexp_oracle::{expm_series2, expm_series3, expim_series, trig_series, SeriesConfig, TrigKind};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![
        4 => -5.0..5.0f64,
        1 => (-10i32..=10).prop_map(|k| k as f64),
    ]
}

fn mat2() -> impl Strategy<Value = Mat2> {
    [entry(), entry(), entry(), entry()]
        .prop_map(|[a, b, c, d]| Mat2::new(a, b, c, d))
}

fn mat3() -> impl Strategy<Value = Mat3> {
    proptest::array::uniform9(entry()).prop_map(Mat3::new)
}

/// Matrices classified comfortably away from any case boundary; near-boundary
/// inputs get their own dedicated stress tests.
fn clean2() -> impl Strategy<Value = Mat2> {
    mat2().prop_filter("margin", |a| {
        classification_margin2(&char_poly2(a), DEFAULT_TOL) > 10.0
    })
}

fn clean3() -> impl Strategy<Value = Mat3> {
    mat3().prop_filter("margin", |a| {
        classification_margin3(&char_poly3(a), DEFAULT_TOL) > 10.0
    })
}

fn rel2(x: &Mat2, y: &Mat2) -> f64 {
    x.sub(y).max_abs() / y.max_abs().max(1.0)
}

fn rel3(x: &Mat3, y: &Mat3) -> f64 {
    x.sub(y).max_abs() / y.max_abs().max(1.0)
}

/// Sorted (re, im) root list, im >= 0, complex pairs collapsed to one entry
/// each so equal-length lists line up case by case.
fn roots3(s: &Spectrum3) -> Vec<(f64, f64)> {
    let mut out = match *s {
        Spectrum3::Triple { l0 } => vec![(l0, 0.0); 3],
        Spectrum3::DoubleSimple { l0, l3 } => vec![(l0, 0.0), (l0, 0.0), (l3, 0.0)],
        Spectrum3::ComplexReal { alpha, omega, l3 } => vec![(alpha, omega), (l3, 0.0)],
        Spectrum3::ThreeDistinct { l1, l2, l3, .. } => vec![(l1, 0.0), (l2, 0.0), (l3, 0.0)],
    };
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}

proptest! {
    #[test]
    fn expm2_matches_series(a in clean2(), t in -2.0..2.0f64) {
        let d = decompose2(&a, DEFAULT_TOL).unwrap();
        let closed = expm2(&d, t).unwrap();
        let series = expm_series2(&a, t, &SeriesConfig::default()).unwrap();
        prop_assert!(rel2(&closed, &series) < 1e-9);
    }

    #[test]
    fn expm3_matches_series(a in clean3(), t in -2.0..2.0f64) {
        let d = decompose3(&a, DEFAULT_TOL).unwrap();
        let closed = expm3(&d, t).unwrap();
        let series = expm_series3(&a, t, &SeriesConfig::default()).unwrap();
        prop_assert!(rel3(&closed, &series) < 1e-9);
    }

    #[test]
    fn trig2_matches_series(a in clean2()) {
        let d = decompose2(&a, DEFAULT_TOL).unwrap();
        let cfg = SeriesConfig::default();
        let pairs = [
            (cosm2(&d), trig_series(&a, TrigKind::Cos, &cfg).unwrap()),
            (sinm2(&d), trig_series(&a, TrigKind::Sin, &cfg).unwrap()),
            (coshm2(&d).unwrap(), trig_series(&a, TrigKind::Cosh, &cfg).unwrap()),
            (sinhm2(&d).unwrap(), trig_series(&a, TrigKind::Sinh, &cfg).unwrap()),
        ];
        for (closed, series) in pairs {
            prop_assert!(rel2(&closed, &series) < 1e-9);
        }
    }

    #[test]
    fn expim_matches_series(a in clean2()) {
        let d = decompose2(&a, DEFAULT_TOL).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let closed = expim2(&d, sign);
            let series = expim_series(&a, sign, &SeriesConfig::default()).unwrap();
            prop_assert!(rel2(&closed.re, &series.re) < 1e-9);
            prop_assert!(rel2(&closed.im, &series.im) < 1e-9);
        }
    }

    // identity budgets below scale with the factor norms, not the result:
    // for stiff spectra the closed form carries an inherent absolute error
    // of order eps * max_abs(e^{tA}), which the small entries cannot escape

    #[test]
    fn semigroup2(a in clean2(), s in -1.5..1.5f64, t in -1.5..1.5f64) {
        let d = decompose2(&a, DEFAULT_TOL).unwrap();
        let both = expm2(&d, s + t).unwrap();
        let (es, et) = (expm2(&d, s).unwrap(), expm2(&d, t).unwrap());
        let budget = 1e-11 * (es.max_abs() * et.max_abs()).max(1.0);
        prop_assert!(es.mul(&et).sub(&both).max_abs() < budget);
    }

    #[test]
    fn semigroup3(a in clean3(), s in -1.5..1.5f64, t in -1.5..1.5f64) {
        let d = decompose3(&a, DEFAULT_TOL).unwrap();
        let both = expm3(&d, s + t).unwrap();
        let (es, et) = (expm3(&d, s).unwrap(), expm3(&d, t).unwrap());
        let budget = 1e-11 * (es.max_abs() * et.max_abs()).max(1.0);
        prop_assert!(es.mul(&et).sub(&both).max_abs() < budget);
    }

    #[test]
    fn determinant_is_exp_trace2(a in clean2(), t in -2.0..2.0f64) {
        let d = decompose2(&a, DEFAULT_TOL).unwrap();
        let e = expm2(&d, t).unwrap();
        let expected = (t * a.trace()).exp();
        let budget = 1e-11 * e.max_abs().powi(2).max(expected.abs()).max(1.0);
        prop_assert!((e.det() - expected).abs() < budget);
    }

    #[test]
    fn determinant_is_exp_trace3(a in clean3(), t in -2.0..2.0f64) {
        let d = decompose3(&a, DEFAULT_TOL).unwrap();
        let e = expm3(&d, t).unwrap();
        let expected = (t * a.trace()).exp();
        let budget = 1e-11 * e.max_abs().powi(3).max(expected.abs()).max(1.0);
        prop_assert!((e.det() - expected).abs() < budget);
    }

    #[test]
    fn pythagorean_identities(a in clean2()) {
        let d = decompose2(&a, DEFAULT_TOL).unwrap();
        let (c, s) = (cosm2(&d), sinm2(&d));
        let circ = c.mul(&c).add(&s.mul(&s));
        prop_assert!(rel2(&circ, &Mat2::IDENTITY) < 1e-10 * c.max_abs().powi(2).max(1.0));
        let (ch, sh) = (coshm2(&d).unwrap(), sinhm2(&d).unwrap());
        let hyp = ch.mul(&ch).sub(&sh.mul(&sh));
        prop_assert!(rel2(&hyp, &Mat2::IDENTITY) < 1e-10 * ch.max_abs().powi(2).max(1.0));
    }

    #[test]
    fn derivative_is_a_times_expm3(a in clean3(), t in -1.0..1.0f64) {
        let d = decompose3(&a, DEFAULT_TOL).unwrap();
        let h = 1e-6;
        let diff = expm3(&d, t + h).unwrap().sub(&expm3(&d, t - h).unwrap()).scale(1.0 / (2.0 * h));
        let rhs = a.mul(&expm3(&d, t).unwrap());
        prop_assert!(rel3(&diff, &rhs) < 1e-6 * a.max_abs().max(1.0));
    }

    #[test]
    fn alt_three_distinct_form_agrees(a in clean3()) {
        let d = decompose3(&a, DEFAULT_TOL).unwrap();
        if matches!(d.spectrum, Spectrum3::ThreeDistinct { .. }) {
            for t in [-1.0, 0.5, 1.5] {
                let main = expm3(&d, t).unwrap();
                let alt = alt_expm3_case4(&d, t).unwrap();
                prop_assert!(rel3(&alt, &main) < 1e-10);
            }
        }
    }

    #[test]
    fn classification_is_translation_equivariant(a in clean2(), c in -3.0..3.0f64) {
        let shifted = a.add(&Mat2::IDENTITY.scale(c));
        let s0 = classify2(&char_poly2(&a), DEFAULT_TOL);
        let s1 = classify2(&char_poly2(&shifted), DEFAULT_TOL);
        match (s0, s1) {
            (Spectrum2::Repeated { l0 }, Spectrum2::Repeated { l0: m0 }) => {
                prop_assert!((m0 - l0 - c).abs() < 1e-9 * (1.0 + l0.abs() + c.abs()));
            }
            (Spectrum2::ComplexPair { alpha, omega }, Spectrum2::ComplexPair { alpha: a1, omega: w1 }) => {
                prop_assert!((a1 - alpha - c).abs() < 1e-9 * (1.0 + alpha.abs() + c.abs()));
                prop_assert!((w1 - omega).abs() < 1e-9 * (1.0 + omega.abs()));
            }
            (Spectrum2::DistinctReal { l1, l2, .. }, Spectrum2::DistinctReal { l1: m1, l2: m2, .. }) => {
                prop_assert!((m1 - l1 - c).abs() < 1e-8 * (1.0 + l1.abs() + c.abs()));
                prop_assert!((m2 - l2 - c).abs() < 1e-8 * (1.0 + l2.abs() + c.abs()));
            }
            (s0, s1) => prop_assert!(false, "case changed under shift: {s0:?} -> {s1:?}"),
        }
    }

    #[test]
    fn roots_satisfy_char_poly3(a in mat3()) {
        let p = char_poly3(&a);
        let budget = 1e-8 * p.scale().powi(3);
        let roots: Vec<f64> = match classify3(&p, DEFAULT_TOL) {
            Spectrum3::Triple { l0 } => vec![l0],
            Spectrum3::DoubleSimple { l0, l3 } => vec![l0, l3],
            // complex pair checked through the real part of f(alpha + i w):
            // alpha^3 - 3 alpha w^2 - tr(alpha^2 - w^2) + m alpha - det
            Spectrum3::ComplexReal { alpha, omega, l3 } => {
                let re = alpha.powi(3) - 3.0 * alpha * omega * omega
                    - p.tr * (alpha * alpha - omega * omega)
                    + p.m * alpha
                    - p.det;
                prop_assert!(re.abs() <= budget, "complex-pair residual {re}");
                vec![l3]
            }
            Spectrum3::ThreeDistinct { l1, l2, l3, .. } => vec![l1, l2, l3],
        };
        for l in roots {
            prop_assert!(p.eval(l).abs() <= budget, "f({l}) = {}", p.eval(l));
        }
    }

    #[test]
    fn complex_case_iff_missing_real_roots(a in clean3()) {
        // companion check: a depressed-free count of real roots from the
        // cubic's critical points, independent of the classifier's route
        let p = char_poly3(&a);
        let crit_disc = 4.0 * p.tr * p.tr - 12.0 * p.m;
        let real_roots = if crit_disc <= 0.0 {
            1
        } else {
            let sq = crit_disc.sqrt();
            let t1 = (2.0 * p.tr - sq) / 6.0;
            let t2 = (2.0 * p.tr + sq) / 6.0;
            if p.eval(t1) * p.eval(t2) > 0.0 { 1 } else { 3 }
        };
        let complex = matches!(classify3(&p, DEFAULT_TOL), Spectrum3::ComplexReal { .. });
        prop_assert_eq!(complex, real_roots == 1);
    }

    #[test]
    fn classification3_shift_equivariance(a in clean3()) {
        for c in [1.0, -1.0, 10.0, -10.0] {
            let shifted = a.add(&Mat3::IDENTITY.scale(c));
            let scale = char_poly3(&a).scale() + c.abs();
            let base = roots3(&classify3(&char_poly3(&a), DEFAULT_TOL));
            let moved = roots3(&classify3(&char_poly3(&shifted), DEFAULT_TOL));
            prop_assert_eq!(base.len(), moved.len());
            for ((re, im), (sre, sim)) in base.iter().zip(&moved) {
                prop_assert!((sre - re - c).abs() < 1e-7 * scale, "{re}+{c} vs {sre}");
                prop_assert!((sim - im).abs() < 1e-7 * scale);
            }
        }
    }

    #[test]
    fn roots_satisfy_char_poly2(a in mat2()) {
        let p = char_poly2(&a);
        let budget = 1e-9 * p.scale() * p.scale();
        match classify2(&p, DEFAULT_TOL) {
            Spectrum2::Repeated { l0 } => prop_assert!(p.eval(l0).abs() <= budget.max(p.disc().abs())),
            Spectrum2::ComplexPair { alpha, omega } => {
                // f(alpha + i w) real part: alpha^2 - w^2 - tr alpha + det
                let re = alpha * alpha - omega * omega - p.tr * alpha + p.det;
                prop_assert!(re.abs() <= budget);
            }
            Spectrum2::DistinctReal { l1, l2, .. } => {
                prop_assert!(p.eval(l1).abs() <= budget);
                prop_assert!(p.eval(l2).abs() <= budget);
            }
        }
    }
}
