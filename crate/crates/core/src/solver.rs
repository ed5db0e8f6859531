//! Closed-form solving of x'(t) = A x(t), x(0) = x0.
//!
//! The solution e^{tA} x0 is re-expressed as a finite list of modes
//! coeff * t^k * e^{rho t} * {1, cos(omega t), sin(omega t)}, read off the
//! same case formulas the exponential uses: each matrix piece of the formula
//! (I - P, N, J, P, ...) applied to x0 yields one coefficient vector. Every
//! constructed solution is spot-checked against direct evaluation of
//! e^{tA} x0 before being returned.

use crate::matfun2::{decompose2, expm2};
use crate::matfun3::{decompose3, expm3};
use crate::spectrum::{Spectrum2, Spectrum3};
use crate::Error;
use matexp_linalg::{Mat2, Mat3, Vec2, Vec3};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Plain,
    Cos,
    Sin,
}

/// One term coeff * t^k * e^{rho t} * basis(kind, omega t) of a solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub rho: f64,
    pub k: u8,
    pub omega: f64,
    pub kind: ModeKind,
    pub coeff: Vec<f64>,
}

impl Mode {
    fn scalar_at(&self, t: f64) -> f64 {
        let trig = match self.kind {
            ModeKind::Plain => 1.0,
            ModeKind::Cos => (self.omega * t).cos(),
            ModeKind::Sin => (self.omega * t).sin(),
        };
        t.powi(self.k as i32) * (self.rho * t).exp() * trig
    }
}

/// x(t) as a finite mode sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormSolution {
    pub modes: Vec<Mode>,
    dim: usize,
}

impl ClosedFormSolution {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluate the mode sum; an infinite component reports `Overflow` with
    /// the offending t.
    pub fn eval(&self, t: f64) -> Result<Vec<f64>, Error> {
        let mut x = vec![0.0; self.dim];
        for mode in &self.modes {
            let s = mode.scalar_at(t);
            for (xi, ci) in x.iter_mut().zip(&mode.coeff) {
                *xi += s * ci;
            }
        }
        if x.iter().all(|v| v.is_finite()) {
            Ok(x)
        } else {
            Err(Error::Overflow { t })
        }
    }
}

/// Nearest small rational p/q (q <= 64) within 1e-12, for display only.
fn snap_rational(v: f64) -> Option<(i64, i64)> {
    if !v.is_finite() || v.abs() > 1e6 {
        return None;
    }
    for q in 1..=64i64 {
        let p = (v * q as f64).round();
        if (v - p / q as f64).abs() <= 1e-12 {
            // reduce so e.g. 2/4 never prints
            let g = gcd(p.abs() as u64, q as u64) as i64;
            return Some((p as i64 / g.max(1), q / g.max(1)));
        }
    }
    None
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn fmt_scalar(v: f64) -> String {
    match snap_rational(v) {
        Some((p, 1)) => format!("{p}"),
        Some((p, q)) => format!("{p}/{q}"),
        None => format!("{v:.12}"),
    }
}

impl fmt::Display for ClosedFormSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let mut terms: Vec<String> = Vec::new();
            for mode in &self.modes {
                let c = mode.coeff[i];
                if c == 0.0 {
                    continue;
                }
                let mut factors: Vec<String> = Vec::new();
                if c != 1.0 || (mode.rho == 0.0 && mode.k == 0 && mode.kind == ModeKind::Plain) {
                    factors.push(fmt_scalar(c));
                }
                match mode.k {
                    0 => {}
                    1 => factors.push("t".into()),
                    k => factors.push(format!("t^{k}")),
                }
                match mode.rho {
                    0.0 => {}
                    1.0 => factors.push("exp(t)".into()),
                    -1.0 => factors.push("exp(-t)".into()),
                    rho => factors.push(format!("exp({}t)", fmt_scalar(rho))),
                }
                match mode.kind {
                    ModeKind::Plain => {}
                    ModeKind::Cos => factors.push(format!("cos({}t)", fmt_scalar(mode.omega))),
                    ModeKind::Sin => factors.push(format!("sin({}t)", fmt_scalar(mode.omega))),
                }
                terms.push(factors.join("*"));
            }
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ").replace("+ -", "- ")
            };
            writeln!(f, "x{}(t) = {}", i + 1, rhs)?;
        }
        Ok(())
    }
}

/// x(t) = e^{tA} x0 for a single t.
pub fn solve_ivp2(a: &Mat2, x0: &Vec2, t: f64, tol: f64) -> Result<Vec2, Error> {
    let d = decompose2(a, tol)?;
    Ok(expm2(&d, t)?.apply(x0))
}

pub fn solve_ivp3(a: &Mat3, x0: &Vec3, t: f64, tol: f64) -> Result<Vec3, Error> {
    let d = decompose3(a, tol)?;
    Ok(expm3(&d, t)?.apply(x0))
}

/// Modes below this relative size are dropped from the expansion.
fn coeff_floor(x0_max: f64) -> f64 {
    1e-13 * 1f64.max(x0_max)
}

fn push(modes: &mut Vec<Mode>, rho: f64, k: u8, omega: f64, kind: ModeKind, coeff: Vec<f64>, floor: f64) {
    if coeff.iter().fold(0.0f64, |m, c| m.max(c.abs())) > floor {
        modes.push(Mode {
            rho,
            k,
            omega,
            kind,
            coeff,
        });
    }
}

/// Self-check a constructed solution against direct evaluation of e^{tA} x0
/// at a handful of t values; points where the direct route overflows are
/// skipped (the mode sum overflows identically there).
fn self_check(
    sol: &ClosedFormSolution,
    direct: impl Fn(f64) -> Result<Vec<f64>, Error>,
) -> Result<(), Error> {
    for t in [-2.0, -0.5, 0.0, 0.5, 2.0] {
        let reference = match direct(t) {
            Ok(v) => v,
            Err(Error::Overflow { .. }) => continue,
            Err(e) => return Err(e),
        };
        let ours = sol.eval(t)?;
        let scale = reference.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let err = ours
            .iter()
            .zip(&reference)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
            / scale;
        if err > 1e-12 {
            return Err(Error::SelfCheck { t, err });
        }
    }
    Ok(())
}

/// Mode expansion of e^{tA} x0 for a 2x2 system.
pub fn closed_form2(a: &Mat2, x0: &Vec2, tol: f64) -> Result<ClosedFormSolution, Error> {
    let d = decompose2(a, tol)?;
    let floor = coeff_floor(x0.max_abs());
    let mut modes = Vec::new();
    let cv = |v: Vec2| v.components().to_vec();
    match d.spectrum {
        Spectrum2::Repeated { l0 } => {
            push(&mut modes, l0, 0, 0.0, ModeKind::Plain, cv(*x0), floor);
            push(&mut modes, l0, 1, 0.0, ModeKind::Plain, cv(d.aux.apply(x0)), floor);
        }
        Spectrum2::ComplexPair { alpha, omega } => {
            push(&mut modes, alpha, 0, omega, ModeKind::Cos, cv(*x0), floor);
            push(&mut modes, alpha, 0, omega, ModeKind::Sin, cv(d.aux.apply(x0)), floor);
        }
        Spectrum2::DistinctReal { l1, l2, .. } => {
            let jx = d.aux.apply(x0);
            push(&mut modes, l1, 0, 0.0, ModeKind::Plain, cv(x0.add(&jx).scale(0.5)), floor);
            push(&mut modes, l2, 0, 0.0, ModeKind::Plain, cv(x0.sub(&jx).scale(0.5)), floor);
        }
    }
    let sol = ClosedFormSolution { modes, dim: 2 };
    self_check(&sol, |t| {
        expm2(&d, t).map(|e| e.apply(x0).components().to_vec())
    })?;
    Ok(sol)
}

/// Mode expansion of e^{tA} x0 for a 3x3 system.
pub fn closed_form3(a: &Mat3, x0: &Vec3, tol: f64) -> Result<ClosedFormSolution, Error> {
    let d = decompose3(a, tol)?;
    let floor = coeff_floor(x0.max_abs());
    let mut modes = Vec::new();
    let cv = |v: Vec3| v.components().to_vec();
    match d.spectrum {
        Spectrum3::Triple { l0 } => {
            push(&mut modes, l0, 0, 0.0, ModeKind::Plain, cv(*x0), floor);
            push(&mut modes, l0, 1, 0.0, ModeKind::Plain, cv(d.nil_or_j.apply(x0)), floor);
            push(&mut modes, l0, 2, 0.0, ModeKind::Plain, cv(d.nil_sq.apply(x0).scale(0.5)), floor);
        }
        Spectrum3::DoubleSimple { l0, l3 } => {
            let px = d.proj.apply(x0);
            push(&mut modes, l0, 0, 0.0, ModeKind::Plain, cv(x0.sub(&px)), floor);
            push(&mut modes, l0, 1, 0.0, ModeKind::Plain, cv(d.nil_or_j.apply(x0)), floor);
            push(&mut modes, l3, 0, 0.0, ModeKind::Plain, cv(px), floor);
        }
        Spectrum3::ComplexReal { alpha, omega, l3 } => {
            let px = d.proj.apply(x0);
            push(&mut modes, alpha, 0, omega, ModeKind::Cos, cv(x0.sub(&px)), floor);
            push(&mut modes, alpha, 0, omega, ModeKind::Sin, cv(d.nil_or_j.apply(x0)), floor);
            push(&mut modes, l3, 0, 0.0, ModeKind::Plain, cv(px), floor);
        }
        Spectrum3::ThreeDistinct { l1, l2, l3, .. } => {
            let px = d.proj.apply(x0);
            let rest = x0.sub(&px);
            let jx = d.nil_or_j.apply(x0);
            push(&mut modes, l1, 0, 0.0, ModeKind::Plain, cv(rest.add(&jx).scale(0.5)), floor);
            push(&mut modes, l2, 0, 0.0, ModeKind::Plain, cv(rest.sub(&jx).scale(0.5)), floor);
            push(&mut modes, l3, 0, 0.0, ModeKind::Plain, cv(px), floor);
        }
    }
    let sol = ClosedFormSolution { modes, dim: 3 };
    self_check(&sol, |t| {
        expm3(&d, t).map(|e| e.apply(x0).components().to_vec())
    })?;
    Ok(sol)
}

/// Evaluate a solution on a grid; each point carries its own overflow report.
pub fn sample(sol: &ClosedFormSolution, t_grid: &[f64]) -> Vec<(f64, Result<Vec<f64>, Error>)> {
    assert!(!t_grid.is_empty(), "grid must be nonempty");
    assert!(t_grid.iter().all(|t| t.is_finite()), "grid must be finite");
    t_grid.iter().map(|&t| (t, sol.eval(t))).collect()
}
