//! Bracketed scalar root finding: bisection refined by secant steps.

use crate::error::{Error, Result};

/// Root of `f` inside the bracket `[lo, hi]`.
///
/// `f(lo)` and `f(hi)` must straddle zero (either may be an exact root).
/// Secant proposals are taken only while they stay strictly inside the
/// current bracket and every other iteration bisects, so the bracket shrinks
/// geometrically for any continuous `f`.
///
/// Stops when the bracket width drops below `tol_x` (plus a few ulps of the
/// midpoint) or when `|f|` at a new point is at most `tol_f`.
pub(crate) fn bisect_secant<F>(f: F, lo: f64, hi: f64, tol_x: f64, tol_f: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            what: "no sign change over bracket",
            lo,
            hi,
        });
    }

    let mut use_secant = true;
    let mut best = 0.5 * (a + b);
    for _ in 0..max_iter {
        let w = b - a;
        let mid = 0.5 * (a + b);
        if w <= tol_x + 4.0 * f64::EPSILON * mid.abs() {
            return Ok(best);
        }
        let mut x = mid;
        if use_secant && fb != fa {
            let xs = b - fb * (b - a) / (fb - fa);
            if xs > a && xs < b {
                x = xs;
            }
        }
        use_secant = !use_secant;
        if x <= a || x >= b {
            x = mid;
        }
        let fx = f(x);
        best = x;
        if fx == 0.0 || fx.abs() <= tol_f {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Ok(best)
}

/// Newton iteration safeguarded by a shrinking bracket, for increasing `f`
/// with `f(lo) <= 0 <= f(hi)`. `fdf` returns `(f(x), f'(x))`.
///
/// Used on hot paths where a good warm start `x0` is available; falls back to
/// bisection whenever a Newton step leaves the bracket.
pub(crate) fn newton_bisect<F>(fdf: F, lo: f64, hi: f64, x0: f64, tol_x: f64, max_iter: usize) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    let mut lo = lo;
    let mut hi = hi;
    let mut x = x0.clamp(lo, hi);
    for _ in 0..max_iter {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 {
            return x;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - fx / dfx;
        if !(next > lo && next < hi) || dfx == 0.0 {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= tol_x + 4.0 * f64::EPSILON * x.abs() {
            return next;
        }
        x = next;
    }
    x
}
