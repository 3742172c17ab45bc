//! Real-valued special-function kernel.
//!
//! The solution family of the local steady-state equation is driven by the
//! Dawson function
//!
//! ```text
//! D(x) = exp(-x^2) * ∫_0^x exp(t^2) dt,
//! ```
//!
//! the numerically stable real form of the erf-of-imaginary-argument terms
//! (`erfi(x) = -i erf(ix)`, `D(x) = (sqrt(pi)/2) erfi(x) exp(-x^2)`).
//!
//! Evaluation is split by regime so each branch stays well conditioned:
//!
//! * `|x| < 1`: alternating Maclaurin series, term ratio `-2x^2/(2k+3)`.
//! * `1 <= |x| < 8`: the confluent form `D(x) = x exp(-x^2) M(1/2, 3/2, x^2)`
//!   whose series has positive terms only, so there is no cancellation and
//!   both factors stay representable.
//! * `|x| >= 8`: the asymptotic series `1/(2x) + 1/(4x^3) + 3/(8x^5) + ...`,
//!   summed to its optimal truncation (remainder ~ exp(-x^2), far below
//!   double precision there).
//!
//! An adaptive Simpson quadrature lives here as well; it is the independent
//! cross-check the test suites integrate against and is never called by the
//! Dawson evaluation itself.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::roots::bisect_secant;

/// Absolute/relative tolerance pair; the crate-wide default accuracy level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for Accuracy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
        }
    }
}

impl Accuracy {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) || !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerances must be strictly positive, got abs={abs_tol}, rel={rel_tol}"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    /// Combined tolerance for a result of magnitude `value`.
    pub fn at(&self, value: f64) -> f64 {
        self.abs_tol + self.rel_tol * value.abs()
    }
}

/// Dawson function `D(x)`.
pub fn dawson(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite {
            what: "dawson argument",
            value: x,
        });
    }
    Ok(dawson_raw(x))
}

/// `erfi(x) * exp(-x^2) = (2/sqrt(pi)) * D(x)`.
pub fn erfi_scaled(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite {
            what: "erfi_scaled argument",
            value: x,
        });
    }
    Ok(std::f64::consts::FRAC_2_SQRT_PI * dawson_raw(x))
}

/// Maximizer of the Dawson function and the value there, `(z0, D(z0))`.
///
/// `z0` is the unique positive stationary point, i.e. the root of
/// `1 - 2 x D(x)` in `[0.5, 1.5]`.
pub fn dawson_peak() -> (f64, f64) {
    static PEAK: OnceLock<(f64, f64)> = OnceLock::new();
    *PEAK.get_or_init(|| {
        let z0 = bisect_secant(|z| 1.0 - 2.0 * z * dawson_raw(z), 0.5, 1.5, 1e-16, 0.0, 200)
            .expect("1 - 2xD(x) changes sign on [0.5, 1.5]");
        (z0, dawson_raw(z0))
    })
}

pub(crate) fn dawson_raw(x: f64) -> f64 {
    let ax = x.abs();
    let d = if ax < 1.0 {
        dawson_series(ax)
    } else if ax < 8.0 {
        dawson_confluent(ax)
    } else {
        dawson_asymptotic(ax)
    };
    if x < 0.0 {
        -d
    } else {
        d
    }
}

fn dawson_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0u32;
    loop {
        term *= -2.0 * x2 / (2 * k + 3) as f64;
        sum += term;
        k += 1;
        if term.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
    }
}

fn dawson_confluent(x: f64) -> f64 {
    // t_k = x^{2k} / ((2k+1) k!), all positive
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0u32;
    loop {
        term *= x2 * (2 * k + 1) as f64 / ((k + 1) as f64 * (2 * k + 3) as f64);
        sum += term;
        k += 1;
        if term <= 1e-17 * sum {
            return x * (-x2).exp() * sum;
        }
    }
}

fn dawson_asymptotic(x: f64) -> f64 {
    // a_0 = 1/(2x), a_{k+1} = a_k (2k+1) / (2x^2)
    let inv2x2 = 1.0 / (2.0 * x * x);
    let mut term = 0.5 / x;
    let mut sum = term;
    let mut k = 0u32;
    loop {
        let next = term * (2 * k + 1) as f64 * inv2x2;
        if next.abs() >= term.abs() {
            // past the optimal truncation point
            return sum;
        }
        sum += next;
        term = next;
        k += 1;
        if term.abs() <= f64::EPSILON * sum.abs() {
            return sum;
        }
    }
}

const QUAD_MAX_DEPTH: u32 = 50;
const QUAD_MAX_EVALS: u64 = 20_000_000;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Deterministic for deterministic `f`. When the refinement budget runs out
/// the best estimate is reported inside [`Error::Accuracy`].
pub fn quadrature<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !a.is_finite() {
        return Err(Error::NonFinite {
            what: "quadrature lower bound",
            value: a,
        });
    }
    if !b.is_finite() {
        return Err(Error::NonFinite {
            what: "quadrature upper bound",
            value: b,
        });
    }
    if a > b {
        return Err(Error::InvalidArgument(format!(
            "quadrature bounds out of order: {a} > {b}"
        )));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    let mut ctx = QuadCtx {
        f: &f,
        evals: 3,
        unresolved: 0.0,
        failed: false,
    };
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    let value = ctx.refine(a, m, b, fa, fm, fb, whole, tol, QUAD_MAX_DEPTH);
    if ctx.failed {
        Err(Error::Accuracy {
            estimate: value,
            requested: tol,
            achieved: ctx.unresolved,
        })
    } else {
        Ok(value)
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

struct QuadCtx<'a, F> {
    f: &'a F,
    evals: u64,
    unresolved: f64,
    failed: bool,
}

impl<F: Fn(f64) -> f64> QuadCtx<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        m: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evals += 2;
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let err = (left + right - whole) / 15.0;
        if err.abs() <= tol {
            return left + right + err;
        }
        if depth == 0 || self.evals >= QUAD_MAX_EVALS {
            self.failed = true;
            self.unresolved += err.abs();
            return left + right + err;
        }
        self.refine(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + self.refine(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}
