//! Bracketed root refinement: Brent's method (bisection-safeguarded secant and
//! inverse quadratic interpolation), plus geometric bracket expansion.

use crate::error::{Error, Result};

const MAX_ITER: u32 = 200;

/// Root of `f` in `[lo, hi]`, given `f(lo)` and `f(hi)` of opposite sign.
///
/// Stops when the bracket is narrower than `2·(rel_tol·|x| + abs_tol)` or `f`
/// vanishes exactly. `f` may fail; its errors are propagated.
pub fn brent<F>(mut f: F, lo: f64, hi: f64, f_lo: f64, f_hi: f64, rel_tol: f64, abs_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::BracketingFailure { lo: lo.min(hi), hi: lo.max(hi) });
    }

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f_lo, f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * (rel_tol * b.abs() + abs_tol);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::RootNotConverged { iterations: MAX_ITER })
}

/// A sign-change bracket `[lo, hi]` with function values at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Bracket a root of an increasing function of a positive scale variable
/// `s`, starting from `seed` and multiplying or dividing by 2 until the sign
/// changes.
pub fn expand_geometric<F>(mut f: F, seed: f64, max_steps: u32) -> Result<Bracket>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(seed > 0.0 && seed.is_finite()) {
        return Err(Error::Domain(format!("bracket seed must be positive, got {seed}")));
    }
    let f_seed = f(seed)?;
    if f_seed == 0.0 {
        return Ok(Bracket { lo: seed, hi: seed, f_lo: 0.0, f_hi: 0.0 });
    }
    let upward = f_seed < 0.0;
    let (mut prev, mut f_prev) = (seed, f_seed);
    for _ in 0..max_steps {
        let next = if upward { prev * 2.0 } else { prev * 0.5 };
        let f_next = f(next)?;
        if f_next.signum() != f_prev.signum() || f_next == 0.0 {
            return Ok(if upward {
                Bracket { lo: prev, hi: next, f_lo: f_prev, f_hi: f_next }
            } else {
                Bracket { lo: next, hi: prev, f_lo: f_next, f_hi: f_prev }
            });
        }
        prev = next;
        f_prev = f_next;
    }
    let (lo, hi) = if upward { (seed, prev) } else { (prev, seed) };
    Err(Error::BracketingFailure { lo, hi })
}
