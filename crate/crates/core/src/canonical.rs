//! Eigenvectors, canonical forms and transition matrices, read directly off
//! the spectral decompositions.
//!
//! The auxiliary matrices already carry the eigenstructure: for a repeated
//! root the eigenspace is the column space of N (or N^2 in the 3x3 triple
//! case), a simple root's eigenspace is the column space of its projection P,
//! the distinct-real eigenspaces are the column spaces of I +- J (2x2) or
//! J +- J^2 (3x3), and a complex pair contributes the invariant real plane
//! spanned by Jx and x (or Jx and J^2 x). Transition matrices are assembled
//! from probe images of those generators; probes scan the standard basis in
//! ascending index, so the output is deterministic even though T itself is
//! mathematically non-unique.

use crate::matfun2::Decomp2;
use crate::matfun3::Decomp3;
use crate::spectrum::{Spectrum2, Spectrum3};
use crate::Error;
use matexp_linalg::{Mat2, Mat3, Vec2, Vec3};

/// Eigenvalue of a real matrix: a real root or a conjugate pair a +- i*w.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigenValue {
    Real(f64),
    ComplexPair { re: f64, im: f64 },
}

/// One eigenvalue with a basis of its eigenspace (real root) or of the
/// invariant real 2-plane it acts on (complex pair), plus the name of the
/// generating matrix the basis was extracted from.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: EigenValue,
    pub basis: Vec<Vec<f64>>,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    pub pairs: Vec<EigenPair>,
}

/// Transition matrix T, canonical form C and the reconstruction defect
/// max_abs(A - T C T^-1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalPair2 {
    pub t: Mat2,
    pub c: Mat2,
    pub tinv: Mat2,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalPair3 {
    pub t: Mat3,
    pub c: Mat3,
    pub tinv: Mat3,
    pub residual: f64,
}

/// Column drop tolerance: below this a vector counts as zero / dependent.
fn floor_for(max_abs: f64) -> f64 {
    1e-10 * 1f64.max(max_abs)
}

fn v2(v: &Vec2) -> Vec<f64> {
    v.components().to_vec()
}

fn v3(v: &Vec3) -> Vec<f64> {
    v.components().to_vec()
}

/// Columns of `m` that are independent of the previously kept ones, decided
/// by Gram-Schmidt remainder against `floor`; the original (unorthogonalized)
/// columns are returned.
fn independent_cols3(m: &Mat3, floor: f64) -> Vec<Vec3> {
    let mut kept: Vec<Vec3> = Vec::new();
    let mut ortho: Vec<Vec3> = Vec::new();
    for j in 0..3 {
        let c = m.col(j);
        let mut r = c;
        for u in &ortho {
            r = r.sub(&u.scale(r.dot(u)));
        }
        if r.max_abs() > floor {
            ortho.push(r.scale(1.0 / r.dot(&r).sqrt()));
            kept.push(c);
        }
    }
    kept
}

/// Basis of the kernel of `n` from the orthogonal complement of its row
/// space, via cross products of independent rows.
fn kernel3(n: &Mat3, floor: f64) -> Vec<Vec3> {
    let rows = independent_cols3(&n.transpose(), floor);
    match rows.len() {
        0 => vec![Vec3::E1, Vec3::E2, Vec3::E3],
        1 => {
            // kernel = plane orthogonal to the single row; two largest of the
            // three cross products with the standard basis span it
            let r = rows[0];
            let mut cands = [
                r.cross(&Vec3::E1),
                r.cross(&Vec3::E2),
                r.cross(&Vec3::E3),
            ];
            cands.sort_by(|a, b| b.max_abs().total_cmp(&a.max_abs()));
            let first = cands[0];
            let second = cands[1..]
                .iter()
                .copied()
                .max_by(|a, b| {
                    first.cross(a).max_abs().total_cmp(&first.cross(b).max_abs())
                })
                .unwrap();
            vec![first, second]
        }
        2 => vec![rows[0].cross(&rows[1])],
        _ => Vec::new(),
    }
}

fn probe2(cond: impl Fn(&Vec2) -> bool) -> Result<Vec2, Error> {
    [Vec2::E1, Vec2::E2]
        .into_iter()
        .find(|e| cond(e))
        .ok_or(Error::ProbeExhausted)
}

fn probe3(cond: impl Fn(&Vec3) -> bool) -> Result<Vec3, Error> {
    [Vec3::E1, Vec3::E2, Vec3::E3]
        .into_iter()
        .find(|e| cond(e))
        .ok_or(Error::ProbeExhausted)
}

fn require<V>(v: V, ok: bool) -> Result<V, Error> {
    if ok {
        Ok(v)
    } else {
        Err(Error::ProbeExhausted)
    }
}

/// Eigen data of a 2x2 matrix, per spectral case.
pub fn eigen2(d: &Decomp2) -> EigenReport {
    let floor = floor_for(d.aux.max_abs());
    let pairs = match d.spectrum {
        Spectrum2::Repeated { l0 } => {
            if d.aux.max_abs() <= floor {
                // A = l0 I: every vector is an eigenvector
                vec![EigenPair {
                    value: EigenValue::Real(l0),
                    basis: vec![v2(&Vec2::E1), v2(&Vec2::E2)],
                    source: "standard basis",
                }]
            } else {
                let col = if d.aux.col(0).max_abs() > floor {
                    d.aux.col(0)
                } else {
                    d.aux.col(1)
                };
                vec![EigenPair {
                    value: EigenValue::Real(l0),
                    basis: vec![v2(&col)],
                    source: "Im(N)",
                }]
            }
        }
        Spectrum2::ComplexPair { alpha, omega } => {
            // no real eigenvectors; report the conjugate pair on the real
            // plane it rotates, spanned by {Jx, x}
            let x = Vec2::E1;
            vec![EigenPair {
                value: EigenValue::ComplexPair {
                    re: alpha,
                    im: omega,
                },
                basis: vec![v2(&d.aux.apply(&x)), v2(&x)],
                source: "span{Jx, x}",
            }]
        }
        Spectrum2::DistinctReal { l1, l2, .. } => {
            let gens = [
                (l1, Mat2::IDENTITY.add(&d.aux), "Im(I+J)"),
                (l2, Mat2::IDENTITY.sub(&d.aux), "Im(I-J)"),
            ];
            gens.iter()
                .map(|(l, g, source)| {
                    let col = if g.col(0).max_abs() > floor {
                        g.col(0)
                    } else {
                        g.col(1)
                    };
                    EigenPair {
                        value: EigenValue::Real(*l),
                        basis: vec![v2(&col)],
                        source,
                    }
                })
                .collect()
        }
    };
    EigenReport { pairs }
}

/// Eigen data of a 3x3 matrix, per spectral case.
pub fn eigen3(d: &Decomp3) -> EigenReport {
    let floor = floor_for(d.nil_or_j.max_abs().max(d.proj.max_abs()));
    let real = |l: f64, g: &Mat3, source: &'static str| EigenPair {
        value: EigenValue::Real(l),
        basis: independent_cols3(g, floor).iter().map(v3).collect(),
        source,
    };
    let pairs = match d.spectrum {
        Spectrum3::Triple { l0 } => {
            let n = &d.nil_or_j;
            if n.max_abs() <= floor {
                vec![EigenPair {
                    value: EigenValue::Real(l0),
                    basis: vec![v3(&Vec3::E1), v3(&Vec3::E2), v3(&Vec3::E3)],
                    source: "standard basis",
                }]
            } else if d.nil_sq.max_abs() <= floor {
                // N^2 = O but N != O: the eigenspace is the 2-dim kernel of N
                vec![EigenPair {
                    value: EigenValue::Real(l0),
                    basis: kernel3(n, floor).iter().map(v3).collect(),
                    source: "ker(N)",
                }]
            } else {
                vec![real(l0, &d.nil_sq, "Im(N^2)")]
            }
        }
        Spectrum3::DoubleSimple { l0, l3 } => {
            let double = if d.nil_or_j.max_abs() <= floor {
                // diagonalizable sub-case: the double eigenspace is Im(I-P)
                real(l0, &Mat3::IDENTITY.sub(&d.proj), "Im(I-P)")
            } else {
                real(l0, &d.nil_or_j, "Im(N)")
            };
            vec![double, real(l3, &d.proj, "Im(P)")]
        }
        Spectrum3::ComplexReal { alpha, omega, l3 } => {
            let x = probe3(|e| d.nil_or_j.apply(e).max_abs() > floor)
                .expect("J restricted to the invariant plane is invertible");
            let jx = d.nil_or_j.apply(&x);
            let jjx = d.nil_or_j.apply(&jx);
            vec![
                EigenPair {
                    value: EigenValue::ComplexPair {
                        re: alpha,
                        im: omega,
                    },
                    basis: vec![v3(&jx), v3(&jjx)],
                    source: "span{Jx, J^2x}",
                },
                real(l3, &d.proj, "Im(P)"),
            ]
        }
        Spectrum3::ThreeDistinct { l1, l2, l3, .. } => {
            let j = &d.nil_or_j;
            let jsq = j.mul(j);
            vec![
                real(l1, &j.add(&jsq), "Im(J+J^2)"),
                real(l2, &j.sub(&jsq), "Im(J-J^2)"),
                real(l3, &d.proj, "Im(P)"),
            ]
        }
    };
    EigenReport { pairs }
}

fn finish2(a: &Mat2, t: Mat2, c: Mat2) -> Result<CanonicalPair2, Error> {
    let tinv = t.invert()?;
    let residual = a.sub(&t.mul(&c).mul(&tinv)).max_abs();
    Ok(CanonicalPair2 {
        t,
        c,
        tinv,
        residual,
    })
}

fn finish3(a: &Mat3, t: Mat3, c: Mat3) -> Result<CanonicalPair3, Error> {
    let tinv = t.invert()?;
    let residual = a.sub(&t.mul(&c).mul(&tinv)).max_abs();
    Ok(CanonicalPair3 {
        t,
        c,
        tinv,
        residual,
    })
}

fn assemble2(d: &Decomp2, a: &Mat2, x: Vec2, y: Vec2) -> Result<CanonicalPair2, Error> {
    let floor = floor_for(a.max_abs());
    match d.spectrum {
        Spectrum2::Repeated { l0 } => {
            if d.aux.max_abs() <= floor {
                return finish2(a, Mat2::IDENTITY, *a);
            }
            let nx = require(d.aux.apply(&x), d.aux.apply(&x).max_abs() > floor)?;
            finish2(a, Mat2::from_cols(&nx, &x), Mat2::new(l0, 1.0, 0.0, l0))
        }
        Spectrum2::ComplexPair { alpha, omega } => {
            let jx = require(d.aux.apply(&x), x.max_abs() > floor)?;
            finish2(
                a,
                Mat2::from_cols(&jx, &x),
                Mat2::new(alpha, omega, -omega, alpha),
            )
        }
        Spectrum2::DistinctReal { l1, l2, .. } => {
            let i = Mat2::IDENTITY;
            let u = i.add(&d.aux).apply(&x);
            let w = i.sub(&d.aux).apply(&y);
            let u = require(u, u.max_abs() > floor)?;
            let w = require(w, w.max_abs() > floor)?;
            finish2(a, Mat2::from_cols(&u, &w), Mat2::new(l1, 0.0, 0.0, l2))
        }
    }
}

/// T and C with deterministic standard-basis probes.
pub fn canonical2(d: &Decomp2, a: &Mat2) -> Result<CanonicalPair2, Error> {
    let floor = floor_for(a.max_abs());
    let (x, y) = match d.spectrum {
        Spectrum2::Repeated { .. } => (
            if d.aux.max_abs() <= floor {
                Vec2::E1
            } else {
                probe2(|e| d.aux.apply(e).max_abs() > floor)?
            },
            Vec2::E1,
        ),
        Spectrum2::ComplexPair { .. } => (Vec2::E1, Vec2::E1),
        Spectrum2::DistinctReal { .. } => {
            let i = Mat2::IDENTITY;
            (
                probe2(|e| i.add(&d.aux).apply(e).max_abs() > floor)?,
                probe2(|e| i.sub(&d.aux).apply(e).max_abs() > floor)?,
            )
        }
    };
    assemble2(d, a, x, y)
}

/// T and C from caller-chosen probe vectors (x for the chain / plane, y for
/// the second distinct-real eigenvector); fails with `ProbeExhausted` if a
/// probe lands in the wrong subspace.
pub fn canonical2_with(d: &Decomp2, a: &Mat2, x: &Vec2, y: &Vec2) -> Result<CanonicalPair2, Error> {
    assemble2(d, a, *x, *y)
}

fn assemble3(d: &Decomp3, a: &Mat3, x: Vec3, y: Vec3) -> Result<CanonicalPair3, Error> {
    let floor = floor_for(a.max_abs());
    let diag = |d1: f64, d2: f64, d3: f64| {
        Mat3::from_rows([[d1, 0.0, 0.0], [0.0, d2, 0.0], [0.0, 0.0, d3]])
    };
    match d.spectrum {
        Spectrum3::Triple { l0 } => {
            let n = &d.nil_or_j;
            if n.max_abs() <= floor {
                return finish3(a, Mat3::IDENTITY, *a);
            }
            if d.nil_sq.max_abs() > floor {
                let nnx = require(d.nil_sq.apply(&x), d.nil_sq.apply(&x).max_abs() > floor)?;
                let t = Mat3::from_cols(&nnx, &n.apply(&x), &x);
                let c = Mat3::from_rows([[l0, 1.0, 0.0], [0.0, l0, 1.0], [0.0, 0.0, l0]]);
                return finish3(a, t, c);
            }
            // N^2 = O, N != O: chain of length two plus an extra eigenvector
            // from ker(N) chosen for the best-conditioned T
            let nx = require(n.apply(&x), n.apply(&x).max_abs() > floor)?;
            let t = kernel3(n, floor)
                .iter()
                .map(|k| Mat3::from_cols(&nx, &x, k))
                .max_by(|p, q| p.det().abs().total_cmp(&q.det().abs()))
                .ok_or(Error::ProbeExhausted)?;
            let c = Mat3::from_rows([[l0, 1.0, 0.0], [0.0, l0, 0.0], [0.0, 0.0, l0]]);
            finish3(a, t, c)
        }
        Spectrum3::DoubleSimple { l0, l3 } => {
            let py = require(d.proj.apply(&y), d.proj.apply(&y).max_abs() > floor)?;
            if d.nil_or_j.max_abs() <= floor {
                // diagonalizable sub-case: two eigenvectors from Im(I-P)
                let cols = independent_cols3(&Mat3::IDENTITY.sub(&d.proj), floor);
                let [u, w] = cols[..] else {
                    return Err(Error::ProbeExhausted);
                };
                return finish3(a, Mat3::from_cols(&u, &w, &py), diag(l0, l0, l3));
            }
            let i = Mat3::IDENTITY;
            let shift0 = a.sub(&i.scale(l0));
            let shift3 = a.sub(&i.scale(l3));
            let w2 = shift3.apply(&x);
            let w1 = shift0.apply(&w2);
            let w1 = require(w1, w1.max_abs() > floor)?;
            let c = Mat3::from_rows([[l0, 1.0, 0.0], [0.0, l0, 0.0], [0.0, 0.0, l3]]);
            finish3(a, Mat3::from_cols(&w1, &w2, &py), c)
        }
        Spectrum3::ComplexReal { alpha, omega, l3 } => {
            let jx = require(d.nil_or_j.apply(&x), d.nil_or_j.apply(&x).max_abs() > floor)?;
            let jjx = d.nil_or_j.apply(&jx);
            let py = require(d.proj.apply(&y), d.proj.apply(&y).max_abs() > floor)?;
            let c = Mat3::from_rows([[alpha, omega, 0.0], [-omega, alpha, 0.0], [0.0, 0.0, l3]]);
            finish3(a, Mat3::from_cols(&jjx, &jx, &py), c)
        }
        Spectrum3::ThreeDistinct { l1, l2, l3, .. } => {
            let j = &d.nil_or_j;
            let jsq = j.mul(j);
            let u = j.add(&jsq).apply(&x);
            let w = j.sub(&jsq).apply(&y);
            let u = require(u, u.max_abs() > floor)?;
            let w = require(w, w.max_abs() > floor)?;
            let pz = probe3(|e| d.proj.apply(e).max_abs() > floor).map(|z| d.proj.apply(&z))?;
            finish3(a, Mat3::from_cols(&u, &w, &pz), diag(l1, l2, l3))
        }
    }
}

/// T and C with deterministic standard-basis probes.
pub fn canonical3(d: &Decomp3, a: &Mat3) -> Result<CanonicalPair3, Error> {
    let floor = floor_for(a.max_abs());
    let (x, y) = match d.spectrum {
        Spectrum3::Triple { .. } => {
            let n = &d.nil_or_j;
            let x = if n.max_abs() <= floor {
                Vec3::E1
            } else if d.nil_sq.max_abs() > floor {
                probe3(|e| d.nil_sq.apply(e).max_abs() > floor)?
            } else {
                probe3(|e| n.apply(e).max_abs() > floor)?
            };
            (x, Vec3::E1)
        }
        Spectrum3::DoubleSimple { l0, l3 } => {
            let y = probe3(|e| d.proj.apply(e).max_abs() > floor)?;
            let x = if d.nil_or_j.max_abs() <= floor {
                Vec3::E1
            } else {
                let i = Mat3::IDENTITY;
                let chain = a.sub(&i.scale(l0)).mul(&a.sub(&i.scale(l3)));
                probe3(|e| chain.apply(e).max_abs() > floor)?
            };
            (x, y)
        }
        Spectrum3::ComplexReal { .. } => (
            probe3(|e| d.nil_or_j.apply(e).max_abs() > floor)?,
            probe3(|e| d.proj.apply(e).max_abs() > floor)?,
        ),
        Spectrum3::ThreeDistinct { .. } => {
            let j = &d.nil_or_j;
            let jsq = j.mul(j);
            (
                probe3(|e| j.add(&jsq).apply(e).max_abs() > floor)?,
                probe3(|e| j.sub(&jsq).apply(e).max_abs() > floor)?,
            )
        }
    };
    assemble3(d, a, x, y)
}

/// T and C from caller-chosen probe vectors; `x` drives the Jordan chain or
/// invariant plane, `y` the simple-root eigenvector (where applicable).
pub fn canonical3_with(d: &Decomp3, a: &Mat3, x: &Vec3, y: &Vec3) -> Result<CanonicalPair3, Error> {
    assemble3(d, a, *x, *y)
}
