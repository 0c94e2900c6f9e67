//! Rational counterexample families.
//!
//! With the leading coefficients normalized to `A = F = 1` and the root
//! ansatz `β₀ = α₀, β₁ = α₁*`, `γ₀ = ikα₀`, `γ₁ = α₁/(ik)`, all remaining
//! coefficients are fixed by `(α₀, k, α₁)`. The constant term `E` must lie on
//! four straight lines in the complex plane at once; eliminating `E` leaves
//! two complex equations `x = y = 0` in `α₁`, solved here by damped
//! Gauss–Newton from a grid of starts. Back-substitution recovers `E` and the
//! overall coefficient scale `|A|` from the normalization of the unitarity
//! identity's constant term.
//!
//! Not every root of the cross-multiplied system makes the four lines
//! actually concurrent: degenerate roots exist where individual factors
//! vanish (for the reference input, `α₁ = 9 − 10i` has real `D`). All roots
//! are returned; `lines_consistent` distinguishes the ones that induce a
//! genuine counterexample polynomial.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::assemble_su2_form;
use crate::error::{Error, Result};
use crate::laurent::{MatLaurent2, ScalarLaurent2};
use crate::scalar::C64;

/// Grid half-width for Gauss–Newton starts.
const START_RANGE: f64 = 15.0;
/// Starts per axis (21×21 grid).
const STARTS_PER_AXIS: usize = 21;
/// Iteration cap per start.
const MAX_ITERS: usize = 100;
/// Distinct-solution separation.
const DEDUP_DIST: f64 = 1e-6;

/// One solution of the family equations, with every derived coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexampleFamily {
    pub alpha0: (f64, f64),
    pub k: f64,
    pub alpha1: (f64, f64),
    pub gamma0: (f64, f64),
    pub gamma1: (f64, f64),
    /// Coefficients with `A = F = 1` normalization; `e` is `E/A`.
    pub b: (f64, f64),
    pub c: (f64, f64),
    pub d: (f64, f64),
    pub e: (f64, f64),
    pub g: (f64, f64),
    pub h: (f64, f64),
    pub i: (f64, f64),
    /// The true leading modulus `|A|` restoring the unit normalization.
    pub scale: f64,
    /// Scaled residual of the two cross-multiplied consistency equations.
    pub equation_residual: f64,
    /// Worst normalized residual of the four line equations at `e`.
    pub line_residual: f64,
    /// Whether the four lines are actually concurrent, i.e. whether `e` is a
    /// genuine intersection point and the induced polynomial is unitary.
    pub lines_consistent: bool,
}

struct Coeffs {
    b: C64,
    c: C64,
    d: C64,
    g: C64,
    h: C64,
    i: C64,
    gamma0: C64,
    gamma1: C64,
}

fn coeffs(alpha0: C64, k: f64, alpha1: C64) -> Coeffs {
    let ik = C64::new(0.0, k);
    let gamma0 = alpha0 * ik;
    let gamma1 = alpha1 / ik;
    Coeffs {
        b: -(alpha0 + alpha1),
        c: alpha0 * alpha1,
        d: -(gamma0 + gamma1),
        g: -(alpha0 + alpha1.conj()),
        h: alpha0 * alpha1.conj(),
        i: -(gamma0 + gamma1.conj()),
        gamma0,
        gamma1,
    }
}

/// The two complex consistency equations for `α₁` (four real equations).
fn residual(alpha0: C64, k: f64, alpha1: C64) -> ([f64; 4], f64) {
    let Coeffs { b, c, d, g, h, i, .. } = coeffs(alpha0, k, alpha1);
    let a = C64::new(1.0, 0.0);
    let f = C64::new(1.0, 0.0);
    let r = g.conj() * i + i.conj() * g - b * d.conj() - d * b.conj();
    let s = -(g.conj() * i + g * i.conj() + b * d.conj() + d * b.conj());
    let t = -(a.conj() * b + b.conj() * a + b * c.conj() + b.conj() * c
        + f * g.conj() + g * f.conj() + g * h.conj() + g.conj() * h);
    let u = i * h.conj() + h * i.conj() - f * i.conj() - f.conj() * i
        - a * d.conj() - d * a.conj() - c * d.conj() - c.conj() * d;
    let p1 = (d * a.conj() - a * d.conj()) * (r * c - s * a);
    let p2 = (r * d - t * a) * (a.conj() * c - c.conj() * a);
    let x = p1 - p2;
    let q1 = (r * d - t * a) * (b - b.conj());
    let q2 = (r * b - u * a) * (d - d.conj());
    let y = q1 - q2;
    let scale = p1.norm() + p2.norm() + q1.norm() + q2.norm() + 1.0;
    ([x.re, x.im, y.re, y.im], scale)
}

fn residual_norm(alpha0: C64, k: f64, alpha1: C64) -> f64 {
    let (r, _) = residual(alpha0, k, alpha1);
    r.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Damped Gauss–Newton from one start; `None` when it fails to converge to a
/// genuine root at the residual scale.
fn newton_from(alpha0: C64, k: f64, start: C64) -> Option<C64> {
    let mut z = start;
    let mut fnorm = residual_norm(alpha0, k, z);
    for _ in 0..MAX_ITERS {
        let h = 1e-6 * (1.0 + z.norm());
        let (f0, _) = residual(alpha0, k, z);
        // central-difference Jacobian, 4×2
        let (fp_re, _) = residual(alpha0, k, z + C64::new(h, 0.0));
        let (fm_re, _) = residual(alpha0, k, z - C64::new(h, 0.0));
        let (fp_im, _) = residual(alpha0, k, z + C64::new(0.0, h));
        let (fm_im, _) = residual(alpha0, k, z - C64::new(0.0, h));
        let mut jtj = [[0.0f64; 2]; 2];
        let mut jtf = [0.0f64; 2];
        for row in 0..4 {
            let j0 = (fp_re[row] - fm_re[row]) / (2.0 * h);
            let j1 = (fp_im[row] - fm_im[row]) / (2.0 * h);
            jtj[0][0] += j0 * j0;
            jtj[0][1] += j0 * j1;
            jtj[1][1] += j1 * j1;
            jtf[0] += j0 * f0[row];
            jtf[1] += j1 * f0[row];
        }
        jtj[1][0] = jtj[0][1];
        let det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let step_re = (jtj[1][1] * jtf[0] - jtj[0][1] * jtf[1]) / det;
        let step_im = (jtj[0][0] * jtf[1] - jtj[1][0] * jtf[0]) / det;
        let full = C64::new(step_re, step_im);
        // halve the step until the residual decreases
        let mut lambda = 1.0f64;
        let mut accepted = false;
        for _ in 0..40 {
            let cand = z - full * lambda;
            let cand_norm = residual_norm(alpha0, k, cand);
            if cand_norm < fnorm {
                z = cand;
                fnorm = cand_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted || full.norm() * lambda < 1e-14 * (1.0 + z.norm()) {
            break;
        }
    }
    let (f_final, scale) = residual(alpha0, k, z);
    let n = f_final.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n <= 1e-9 * scale {
        Some(z)
    } else {
        None
    }
}

/// Solve the family equations for `α₁` and back-substitute every derived
/// quantity. Returns all distinct solutions, sorted by real then imaginary
/// part; an empty list means no start converged.
pub fn solve_family(alpha0: C64, k: f64) -> Result<Vec<CounterexampleFamily>> {
    if alpha0.norm() == 0.0 || k == 0.0 {
        return Err(Error::MalformedInput("alpha0 and k must be nonzero".into()));
    }
    let starts: Vec<C64> = (0..STARTS_PER_AXIS * STARTS_PER_AXIS)
        .map(|idx| {
            let i = idx / STARTS_PER_AXIS;
            let j = idx % STARTS_PER_AXIS;
            let re = -START_RANGE + 2.0 * START_RANGE * i as f64 / (STARTS_PER_AXIS - 1) as f64;
            let im = -START_RANGE + 2.0 * START_RANGE * j as f64 / (STARTS_PER_AXIS - 1) as f64;
            C64::new(re, im)
        })
        .collect();
    // fan out the starts; merge preserves grid order for determinism
    let converged: Vec<Option<C64>> = starts
        .par_iter()
        .map(|s| newton_from(alpha0, k, *s))
        .collect();
    let mut roots: Vec<C64> = Vec::new();
    for root in converged.into_iter().flatten() {
        if !roots.iter().any(|r| (r - root).norm() < DEDUP_DIST) {
            roots.push(root);
        }
    }
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out = Vec::new();
    for alpha1 in roots {
        out.push(finish_solution(alpha0, k, alpha1));
    }
    Ok(out)
}

/// Back-substitute `E` (least squares over the four lines) and `|A|` (from
/// the constant-term normalization).
fn finish_solution(alpha0: C64, k: f64, alpha1: C64) -> CounterexampleFamily {
    let cf = coeffs(alpha0, k, alpha1);
    let a = C64::new(1.0, 0.0);
    let f = C64::new(1.0, 0.0);
    let (b, c, d, g, h, i) = (cf.b, cf.c, cf.d, cf.g, cf.h, cf.i);
    let r = g.conj() * i + i.conj() * g - b * d.conj() - d * b.conj();
    let s = -(g.conj() * i + g * i.conj() + b * d.conj() + d * b.conj());
    let t = -(a.conj() * b + b.conj() * a + b * c.conj() + b.conj() * c
        + f * g.conj() + g * f.conj() + g * h.conj() + g.conj() * h);
    let u = i * h.conj() + h * i.conj() - f * i.conj() - f.conj() * i
        - a * d.conj() - d * a.conj() - c * d.conj() - c.conj() * d;
    // Each line reads X·E* + E·X* = rhs, i.e. 2(Re X·Re E + Im X·Im E) = rhs.
    let lines = [(a, r.re), (c, s.re), (d, t.re), (b, u.re)];
    let mut m = [[0.0f64; 2]; 2];
    let mut v = [0.0f64; 2];
    for (x, rhs) in lines {
        let row = [2.0 * x.re, 2.0 * x.im];
        m[0][0] += row[0] * row[0];
        m[0][1] += row[0] * row[1];
        m[1][1] += row[1] * row[1];
        v[0] += row[0] * rhs;
        v[1] += row[1] * rhs;
    }
    m[1][0] = m[0][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let e = if det.abs() < 1e-12 {
        C64::new(0.0, 0.0)
    } else {
        C64::new(
            (m[1][1] * v[0] - m[0][1] * v[1]) / det,
            (m[0][0] * v[1] - m[1][0] * v[0]) / det,
        )
    };
    let mut line_residual: f64 = 0.0;
    for (x, rhs) in lines {
        let lr = (2.0 * (x.re * e.re + x.im * e.im) - rhs).abs() / (1.0 + x.norm() * e.norm());
        line_residual = line_residual.max(lr);
    }
    let (eq, eq_scale) = residual(alpha0, k, alpha1);
    let equation_residual =
        eq.iter().map(|v| v * v).sum::<f64>().sqrt() / eq_scale;
    // 2|A|² + 2|B|² + 2|C|² + 2|D|² + |E|² + 2|F|² + 2|G|² + 2|H|² + 2|I|² = 1
    let sum = 2.0 * (1.0 + b.norm_sqr() + c.norm_sqr() + d.norm_sqr())
        + e.norm_sqr()
        + 2.0 * (1.0 + g.norm_sqr() + h.norm_sqr() + i.norm_sqr());
    let scale = (1.0 / sum).sqrt();
    CounterexampleFamily {
        alpha0: (alpha0.re, alpha0.im),
        k,
        alpha1: (alpha1.re, alpha1.im),
        gamma0: (cf.gamma0.re, cf.gamma0.im),
        gamma1: (cf.gamma1.re, cf.gamma1.im),
        b: (b.re, b.im),
        c: (c.re, c.im),
        d: (d.re, d.im),
        e: (e.re, e.im),
        g: (g.re, g.im),
        h: (h.re, h.im),
        i: (i.re, i.im),
        scale,
        equation_residual,
        line_residual,
        lines_consistent: line_residual <= 1e-10,
    }
}

impl CounterexampleFamily {
    /// The induced polynomial at true scale (phases fixed to zero).
    pub fn to_polynomial(&self) -> MatLaurent2<C64> {
        let s = C64::new(self.scale, 0.0);
        let c = |t: (f64, f64)| C64::new(t.0, t.1) * s;
        let a = s;
        let f = s;
        let (b, cc, d, e) = (c(self.b), c(self.c), c(self.d), c(self.e));
        let (g, h, i) = (c(self.g), c(self.h), c(self.i));
        let p = ScalarLaurent2::from_terms([
            ((2, 2), a),
            ((-2, -2), a),
            ((0, 2), b),
            ((0, -2), b),
            ((-2, 2), cc),
            ((2, -2), cc),
            ((2, 0), d),
            ((-2, 0), d),
            ((0, 0), e),
        ]);
        let q = ScalarLaurent2::from_terms([
            ((2, 2), f),
            ((-2, -2), -f),
            ((0, 2), g),
            ((0, -2), -g),
            ((-2, 2), h),
            ((2, -2), -h),
            ((2, 0), i),
            ((-2, 0), -i),
        ]);
        assemble_su2_form(&p, &q)
    }
}
