//! Characteristic roots of 2x2 and 3x3 real matrices and their classification
//! into spectral cases, with explicit tolerance-controlled multiplicity
//! detection.
//!
//! The monic convention is used throughout: f(l) = l^2 - tr*l + det and
//! f(l) = l^3 - tr*l^2 + m*l - det, where m is the sum of the principal 2x2
//! minors. The cubic is shifted to depressed form (eliminating the quadratic
//! term), its discriminant decides the case, and the roots come from the
//! trigonometric formula (three real roots) or Cardano (one real root plus a
//! complex pair), followed by Newton polishing and deflation: the close pair
//! of roots is recovered from the deflated quadratic's midpoint and gap, which
//! is far better conditioned near case boundaries than two independent roots.

use matexp_linalg::{Mat2, Mat3};

/// Monic quadratic l^2 - tr*l + det.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharPoly2 {
    pub tr: f64,
    pub det: f64,
}

impl CharPoly2 {
    pub fn disc(&self) -> f64 {
        self.tr * self.tr - 4.0 * self.det
    }

    /// Scale factor for relative tolerance decisions.
    pub fn scale(&self) -> f64 {
        1f64.max(self.tr.abs()).max(self.det.abs().sqrt())
    }

    pub fn eval(&self, l: f64) -> f64 {
        (l - self.tr) * l + self.det
    }
}

/// Monic cubic l^3 - tr*l^2 + m*l - det.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharPoly3 {
    pub tr: f64,
    pub m: f64,
    pub det: f64,
}

impl CharPoly3 {
    /// Scale factor for relative tolerance decisions.
    pub fn scale(&self) -> f64 {
        1f64.max(self.tr.abs())
            .max(self.m.abs().sqrt())
            .max(self.det.abs().cbrt())
    }

    pub fn eval(&self, l: f64) -> f64 {
        ((l - self.tr) * l + self.m) * l - self.det
    }

    fn eval_deriv(&self, l: f64) -> f64 {
        (3.0 * l - 2.0 * self.tr) * l + self.m
    }

    /// Coefficients (p, q) of the depressed cubic u^3 + p*u + q obtained by
    /// the shift l = u + tr/3 (shifting A by a*I shifts every root by a).
    pub fn depressed(&self) -> (f64, f64) {
        let a = -self.tr;
        let b = self.m;
        let c = -self.det;
        let p = b - a * a / 3.0;
        let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
        (p, q)
    }

    /// Discriminant of the depressed cubic: positive for three distinct real
    /// roots, negative for one real root and a complex pair.
    pub fn depressed_disc(&self) -> f64 {
        let (p, q) = self.depressed();
        -4.0 * p * p * p - 27.0 * q * q
    }
}

/// Spectral classification of a 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spectrum2 {
    /// l1 = l2 = l0 (real).
    Repeated { l0: f64 },
    /// l_{1,2} = alpha +/- i*omega, omega > 0.
    ComplexPair { alpha: f64, omega: f64 },
    /// l1 > l2 real; alpha = (l1+l2)/2, beta = (l1-l2)/2 > 0.
    DistinctReal { l1: f64, l2: f64, alpha: f64, beta: f64 },
}

impl Spectrum2 {
    pub fn case_name(&self) -> &'static str {
        match self {
            Spectrum2::Repeated { .. } => "repeated",
            Spectrum2::ComplexPair { .. } => "complex-pair",
            Spectrum2::DistinctReal { .. } => "distinct-real",
        }
    }
}

/// Spectral classification of a 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spectrum3 {
    /// l1 = l2 = l3 = l0.
    Triple { l0: f64 },
    /// l1 = l2 = l0 with multiplicity two, l3 simple, l0 != l3.
    DoubleSimple { l0: f64, l3: f64 },
    /// l_{1,2} = alpha +/- i*omega (omega > 0) and a real l3.
    ComplexReal { alpha: f64, omega: f64, l3: f64 },
    /// Three distinct reals, l1 > l2; l3 is the root farthest from the
    /// midpoint of the other two (ties broken toward the largest root).
    ThreeDistinct {
        l1: f64,
        l2: f64,
        l3: f64,
        alpha: f64,
        beta: f64,
    },
}

impl Spectrum3 {
    pub fn case_name(&self) -> &'static str {
        match self {
            Spectrum3::Triple { .. } => "triple",
            Spectrum3::DoubleSimple { .. } => "double-simple",
            Spectrum3::ComplexReal { .. } => "complex-real",
            Spectrum3::ThreeDistinct { .. } => "three-distinct",
        }
    }
}

pub fn char_poly2(a: &Mat2) -> CharPoly2 {
    CharPoly2 {
        tr: a.trace(),
        det: a.det(),
    }
}

pub fn char_poly3(a: &Mat3) -> CharPoly3 {
    CharPoly3 {
        tr: a.trace(),
        m: a.minor_sum(),
        det: a.det(),
    }
}

pub fn classify2(p: &CharPoly2, tol: f64) -> Spectrum2 {
    assert!(tol >= 0.0, "tolerance must be non-negative");
    let disc = p.disc();
    let band = tol * p.scale() * p.scale();
    if disc.abs() <= band {
        Spectrum2::Repeated { l0: p.tr / 2.0 }
    } else if disc < 0.0 {
        Spectrum2::ComplexPair {
            alpha: p.tr / 2.0,
            omega: (-disc).sqrt() / 2.0,
        }
    } else {
        // cancellation-safe quadratic: the larger-magnitude root first,
        // the other from the product of roots
        let sq = disc.sqrt();
        let big = if p.tr >= 0.0 {
            (p.tr + sq) / 2.0
        } else {
            (p.tr - sq) / 2.0
        };
        let (r1, r2) = if big != 0.0 {
            (big, p.det / big)
        } else {
            (sq / 2.0, -sq / 2.0)
        };
        let (l1, l2) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
        Spectrum2::DistinctReal {
            l1,
            l2,
            alpha: (l1 + l2) / 2.0,
            beta: (l1 - l2) / 2.0,
        }
    }
}

/// Ratio of the discriminant to its classification band; > 1 means the
/// quadratic classified cleanly away from the repeated-root boundary.
pub fn classification_margin2(p: &CharPoly2, tol: f64) -> f64 {
    let band = tol * p.scale() * p.scale();
    p.disc().abs() / band
}

fn cbrt_stable_real_root(p: f64, q: f64) -> f64 {
    // One real root of u^3 + p*u + q when the discriminant is negative.
    // Pick the larger-magnitude cube-root branch to avoid cancellation.
    let d = q * q / 4.0 + p * p * p / 27.0;
    let sqrt_d = d.max(0.0).sqrt();
    let w = if q >= 0.0 {
        -(q / 2.0 + sqrt_d)
    } else {
        -q / 2.0 + sqrt_d
    };
    let u = w.cbrt();
    if u == 0.0 {
        0.0
    } else {
        u - p / (3.0 * u)
    }
}

fn newton_polish(p: &CharPoly3, mut l: f64) -> f64 {
    for _ in 0..2 {
        let d = p.eval_deriv(l);
        if d.abs() > f64::MIN_POSITIVE {
            let step = p.eval(l) / d;
            if step.is_finite() {
                l -= step;
            }
        }
    }
    l
}

/// Divide the monic cubic by (l - root): returns (pq, qq) of the monic
/// quotient l^2 + pq*l + qq.
fn deflate(p: &CharPoly3, root: f64) -> (f64, f64) {
    let a = -p.tr;
    let b = p.m;
    let pq = a + root;
    let qq = b + root * pq;
    (pq, qq)
}

/// Midpoint and half-gap of the roots of the monic quadratic l^2 + pq*l + qq,
/// assuming they are real; the gap comes from the quadratic discriminant
/// rather than from two separately computed roots.
fn quadratic_pair(pq: f64, qq: f64) -> (f64, f64) {
    let alpha = -pq / 2.0;
    let disc = pq * pq - 4.0 * qq;
    (alpha, disc.max(0.0).sqrt() / 2.0)
}

pub fn classify3(p: &CharPoly3, tol: f64) -> Spectrum3 {
    assert!(tol >= 0.0, "tolerance must be non-negative");
    let scale = p.scale();
    let (dp, dq) = p.depressed();
    let delta = p.depressed_disc();
    let band = tol * scale.powi(6);

    if delta < -band {
        // one real root plus a complex pair
        let l3 = newton_polish(p, cbrt_stable_real_root(dp, dq) + p.tr / 3.0);
        let (pq, qq) = deflate(p, l3);
        let alpha = -pq / 2.0;
        let disc = pq * pq - 4.0 * qq; // negative here
        let omega = (-disc).max(0.0).sqrt() / 2.0;
        return Spectrum3::ComplexReal { alpha, omega, l3 };
    }

    // three real roots (possibly clustered); candidates for clustering and
    // labeling, refined afterwards
    let candidates: [f64; 3] = if delta > band {
        // trigonometric formula, valid for p < 0
        let r = (-dp / 3.0).max(0.0).sqrt();
        let arg = if r > 0.0 {
            (3.0 * dq / (2.0 * dp * r)).clamp(-1.0, 1.0)
        } else {
            1.0
        };
        let theta = arg.acos();
        let mut c = [0.0; 3];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = 2.0 * r * (theta / 3.0 - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos()
                + p.tr / 3.0;
        }
        c
    } else {
        // discriminant within the band: clustered roots; a vanishing linear
        // depressed coefficient means a triple root
        if dp.abs() <= tol.max(1e-14) * scale * scale && dq.abs() <= tol.max(1e-14) * scale.powi(3)
        {
            let l0 = p.tr / 3.0;
            [l0, l0, l0]
        } else {
            let double = if dp != 0.0 { -3.0 * dq / (2.0 * dp) } else { 0.0 };
            let simple = -2.0 * double;
            [
                double + p.tr / 3.0,
                double + p.tr / 3.0,
                simple + p.tr / 3.0,
            ]
        }
    };

    // cluster by pairwise gap
    let gap_band = tol * scale;
    let close = |a: f64, b: f64| (a - b).abs() <= gap_band;
    let (c0, c1, c2) = (candidates[0], candidates[1], candidates[2]);
    let pairs_close = [close(c0, c1), close(c0, c2), close(c1, c2)];
    let n_close = pairs_close.iter().filter(|&&x| x).count();

    if n_close >= 2 {
        // all three effectively coincide (two overlapping pairs force it)
        return Spectrum3::Triple { l0: p.tr / 3.0 };
    }
    if n_close == 1 {
        // one double root and one simple root; polish the simple one, then
        // place the double root at the exact midpoint implied by the trace
        let simple = if pairs_close[0] {
            c2
        } else if pairs_close[1] {
            c1
        } else {
            c0
        };
        let l3 = newton_polish(p, simple);
        let l0 = (p.tr - l3) / 2.0;
        return Spectrum3::DoubleSimple { l0, l3 };
    }

    // three distinct reals: l3 is the root farthest from the midpoint of the
    // other two (this keeps the projection denominator (l3-alpha)^2 - beta^2
    // large), ties broken toward the largest root
    let separation = |i: usize| -> f64 {
        let others: Vec<f64> = (0..3).filter(|&j| j != i).map(|j| candidates[j]).collect();
        (candidates[i] - (others[0] + others[1]) / 2.0).abs()
    };
    let tie_eps = 1e-12 * scale;
    let mut best = 0;
    for i in 1..3 {
        let (si, sb) = (separation(i), separation(best));
        if si > sb + tie_eps || ((si - sb).abs() <= tie_eps && candidates[i] > candidates[best]) {
            best = i;
        }
    }
    let l3 = newton_polish(p, candidates[best]);
    let (pq, qq) = deflate(p, l3);
    let (alpha, beta) = quadratic_pair(pq, qq);
    Spectrum3::ThreeDistinct {
        l1: alpha + beta,
        l2: alpha - beta,
        l3,
        alpha,
        beta,
    }
}

/// Smallest ratio of a case-deciding quantity to its classification band for
/// the cubic: the depressed discriminant against tol*scale^6 and, for real
/// spectra, every pairwise root gap against tol*scale. > 1 means clean.
pub fn classification_margin3(p: &CharPoly3, tol: f64) -> f64 {
    let scale = p.scale();
    let band = tol * scale.powi(6);
    let gap_band = tol * scale;
    let delta = p.depressed_disc().abs();
    // distance ratio from the decision boundary: quantities that must be
    // large are measured as value/band, quantities that must vanish as
    // band/value
    let inside = |value: f64, b: f64| if value == 0.0 { f64::INFINITY } else { b / value };
    match classify3(p, tol) {
        Spectrum3::Triple { .. } => {
            let (dp, _) = p.depressed();
            inside(delta, band).min(inside(dp.abs(), tol.max(1e-14) * scale * scale))
        }
        Spectrum3::DoubleSimple { l0, l3 } => {
            inside(delta, band).min((l0 - l3).abs() / gap_band)
        }
        Spectrum3::ComplexReal { .. } => delta / band,
        Spectrum3::ThreeDistinct { l1, l2, l3, .. } => {
            let mut margin = delta / band;
            for (a, b) in [(l1, l2), (l1, l3), (l2, l3)] {
                margin = margin.min((a - b).abs() / gap_band);
            }
            margin
        }
    }
}
