//! The local steady-state problem.
//!
//! With the enclosed area absorbed into the coefficients (`c1_hat = c1 * A`,
//! `c2_hat = c2 * A`), the steadiness condition becomes a first-order ODE for
//! the tangent angle whose solution family is, in the invariant parameter
//! `q = sqrt(c2_hat / (2 c1_hat))`,
//!
//! ```text
//! kappa(y)          = (1 - 2 q y D(q y)) / c1_hat
//! cos(gamma(y))     = D(q y) / (q c1_hat)          (q > 0)
//! ```
//!
//! with `D` the Dawson function. This module evaluates those profiles,
//! locates the curvature zero `y0 = z0 / q` (`z0` the Dawson maximizer), the
//! critical coefficient `c1_hat_crit = D(z0) / q`, and the apex height
//! `y_bar` where the cumulative curvature reaches 1. It realizes the quarter
//! arc from the leftmost point P (vertical tangent) to the top point Q
//! (horizontal tangent) in the plane and assembles the closed D2-symmetric
//! shape from four mirror copies.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::nonlocal::NonlocalParams;
use crate::roots::{bisect_secant, newton_bisect};
use crate::specfun::{dawson_peak, dawson_raw};

/// Parameters of the local equation. `c2_hat` is derived so that
/// `c2_hat = 2 q^2 c1_hat` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalParams {
    c1_hat: f64,
    q: f64,
    c2_hat: f64,
}

impl LocalParams {
    pub fn new(c1_hat: f64, q: f64) -> Result<Self> {
        if !c1_hat.is_finite() {
            return Err(Error::NonFinite {
                what: "c1_hat",
                value: c1_hat,
            });
        }
        if !q.is_finite() {
            return Err(Error::NonFinite { what: "q", value: q });
        }
        if c1_hat <= 0.0 {
            return Err(Error::Domain(format!("c1_hat must be positive, got {c1_hat}")));
        }
        if q < 0.0 {
            return Err(Error::Domain(format!("q must be nonnegative, got {q}")));
        }
        Ok(Self {
            c1_hat,
            q,
            c2_hat: 2.0 * q * q * c1_hat,
        })
    }

    /// Build from the pair `(c1_hat, c2_hat)`, deriving `q`.
    pub fn from_c_hats(c1_hat: f64, c2_hat: f64) -> Result<Self> {
        if !c2_hat.is_finite() {
            return Err(Error::NonFinite {
                what: "c2_hat",
                value: c2_hat,
            });
        }
        if c2_hat < 0.0 {
            return Err(Error::Domain(format!("c2_hat must be nonnegative, got {c2_hat}")));
        }
        Self::new(c1_hat, (c2_hat / (2.0 * c1_hat)).sqrt())
    }

    pub fn c1_hat(&self) -> f64 {
        self.c1_hat
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn c2_hat(&self) -> f64 {
        self.c2_hat
    }
}

/// Curvature profile of the local equation at height `y >= 0`.
pub fn kappa(p: &LocalParams, y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::NonFinite { what: "y", value: y });
    }
    if y < 0.0 {
        return Err(Error::Domain(format!("y must be nonnegative, got {y}")));
    }
    Ok(kappa_raw(p, y))
}

pub(crate) fn kappa_raw(p: &LocalParams, y: f64) -> f64 {
    let z = p.q * y;
    (1.0 - 2.0 * z * dawson_raw(z)) / p.c1_hat
}

/// The cumulative curvature integral `∫_0^y kappa`, equal to `cos(gamma(y))`.
///
/// Closed form `D(q y) / (q c1_hat)` for `q > 0` and `y / c1_hat` for the
/// circle case; only defined up to the apex height.
pub fn cos_gamma(p: &LocalParams, y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::NonFinite { what: "y", value: y });
    }
    if y < 0.0 {
        return Err(Error::Domain(format!("y must be nonnegative, got {y}")));
    }
    let y_bar = apex_height(p)?;
    if y > y_bar {
        return Err(Error::Domain(format!(
            "y = {y} exceeds the apex height {y_bar}; cos(gamma) would exceed 1"
        )));
    }
    Ok(cos_gamma_raw(p, y))
}

fn cos_gamma_raw(p: &LocalParams, y: f64) -> f64 {
    if p.q == 0.0 {
        y / p.c1_hat
    } else {
        dawson_raw(p.q * y) / (p.q * p.c1_hat)
    }
}

/// Tangent inclination `gamma(y) = arccos(∫_0^y kappa)`, in `[0, pi/2]`.
pub fn gamma(p: &LocalParams, y: f64) -> Result<f64> {
    Ok(cos_gamma(p, y)?.clamp(-1.0, 1.0).acos())
}

/// The unique positive zero of the curvature profile, `y0 = z0 / q`.
pub fn kappa_zero(p: &LocalParams) -> Result<f64> {
    if p.q == 0.0 {
        return Err(Error::NoZero);
    }
    Ok(dawson_peak().0 / p.q)
}

/// Critical coefficient at fixed `q`: the largest `c1_hat` whose cumulative
/// curvature integral still reaches 1 by the curvature zero. Equals
/// `D(z0) / q`.
pub fn c1_hat_crit(q: f64) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::NonFinite { what: "q", value: q });
    }
    if q < 0.0 {
        return Err(Error::Domain(format!("q must be nonnegative, got {q}")));
    }
    if q == 0.0 {
        return Err(Error::NoCritical);
    }
    Ok(dawson_peak().1 / q)
}

/// Membership in the realizable set at fixed `q`: `q = 0` (circles) or
/// `c1_hat <= c1_hat_crit(q)`.
pub fn is_realizable(p: &LocalParams) -> bool {
    p.q == 0.0 || p.c1_hat <= dawson_peak().1 / p.q
}

/// Apex height `y_bar`: the unique root of `cos(gamma(y)) = 1`, i.e. the
/// height of the top point Q. Requires strict `c1_hat < c1_hat_crit` when
/// `q > 0`; at equality the limit curve is unbounded.
pub fn apex_height(p: &LocalParams) -> Result<f64> {
    if p.q == 0.0 {
        return Ok(p.c1_hat);
    }
    let (z0, d_peak) = dawson_peak();
    let crit = d_peak / p.q;
    if p.c1_hat > crit {
        return Err(Error::NotRealizable {
            c1_hat: p.c1_hat,
            c1_crit: crit,
        });
    }
    if p.c1_hat == crit {
        return Err(Error::DegenerateLimit { c1_hat: p.c1_hat });
    }
    let target = p.q * p.c1_hat; // < D(z0)
    let z = bisect_secant(|z| dawson_raw(z) - target, 0.0, z0, 1e-16, 0.0, 200)?;
    Ok(z / p.q)
}

/// Curvature profile summary for `q > 0`: the zero height and the critical
/// coefficient that go with the parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureProfile {
    pub params: LocalParams,
    pub y0: f64,
    pub c1_crit: f64,
}

impl CurvatureProfile {
    pub fn new(params: LocalParams) -> Result<Self> {
        let y0 = kappa_zero(&params)?;
        let c1_crit = c1_hat_crit(params.q())?;
        Ok(Self { params, y0, c1_crit })
    }
}

/// One sample of the realized quarter arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentSample {
    pub y: f64,
    pub gamma: f64,
    pub kappa: f64,
    pub x: f64,
}

/// The quarter arc from P (leftmost, vertical tangent, `x = -width`) to Q
/// (top, horizontal tangent, `x = 0`), sampled on a uniform gamma grid,
/// together with the area between arc and x axis.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSegment {
    pub params: LocalParams,
    pub samples: Vec<SegmentSample>,
    pub area_bar: f64,
    pub y_bar: f64,
}

/// Realize the quarter arc with `n >= 16` samples.
///
/// The x coordinate integrates `dx/dgamma = -cos(gamma) / kappa` on the
/// uniform gamma grid with Simpson steps (the y parametrization would hit the
/// `cot(gamma)` blow-up at Q); heights come from inverting the closed-form
/// `cos(gamma)` relation on the rising branch of the Dawson function.
pub fn realize_segment(p: &LocalParams, n: usize) -> Result<CurveSegment> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!(
            "segment needs at least 16 samples, got {n}"
        )));
    }
    let y_bar = apex_height(p)?;
    let c1 = p.c1_hat;
    let q = p.q;
    let m = n - 1;
    let slots = 2 * m + 1; // grid plus midpoints

    // gamma and cos(gamma) per slot; slot j=0 is P (gamma = pi/2), the last is Q
    let mut gam = vec![0.0; slots];
    let mut cosg = vec![0.0; slots];
    for j in 0..slots {
        let g = FRAC_PI_2 * (1.0 - j as f64 / (slots - 1) as f64);
        gam[j] = g;
        cosg[j] = if j == 0 { 0.0 } else { g.cos() };
    }

    // heights per slot
    let mut ys = vec![0.0; slots];
    if q == 0.0 {
        for j in 0..slots {
            ys[j] = c1 * cosg[j];
        }
    } else {
        let z_bar = q * y_bar;
        let qc1 = q * c1;
        let mut z_prev = 0.0;
        for j in 1..slots {
            let z = if j == slots - 1 {
                z_bar
            } else {
                let target = qc1 * cosg[j];
                newton_bisect(
                    |z| {
                        let d = dawson_raw(z);
                        (d - target, 1.0 - 2.0 * z * d)
                    },
                    z_prev,
                    z_bar,
                    z_prev,
                    1e-16,
                    60,
                )
            };
            ys[j] = z / q;
            z_prev = z;
        }
    }

    let kappa_at = |y: f64| kappa_raw(p, y);
    let h = FRAC_PI_2 / m as f64;

    // cumulative width from P and the area under the arc, Simpson per interval
    let mut xs = vec![0.0; n];
    let mut area = 0.0;
    for i in 0..m {
        let (j0, j1, j2) = (2 * i, 2 * i + 1, 2 * i + 2);
        let f = |j: usize| cosg[j] / kappa_at(ys[j]);
        let (f0, f1, f2) = (f(j0), f(j1), f(j2));
        xs[i + 1] = xs[i] + h / 6.0 * (f0 + 4.0 * f1 + f2);
        area += h / 6.0 * (ys[j0] * f0 + 4.0 * ys[j1] * f1 + ys[j2] * f2);
    }

    let width = xs[m];
    let samples = (0..n)
        .map(|i| SegmentSample {
            y: ys[2 * i],
            gamma: gam[2 * i],
            kappa: kappa_at(ys[2 * i]),
            x: xs[i] - width,
        })
        .collect();

    Ok(CurveSegment {
        params: *p,
        samples,
        area_bar: area,
        y_bar,
    })
}

/// Area under the arc, `∫ y(gamma) cos(gamma) / kappa(gamma) dgamma` over the
/// stored sample grid (Simpson composite, 3/8 tail for odd interval counts).
pub fn segment_area(seg: &CurveSegment) -> Result<f64> {
    let n = seg.samples.len();
    for (i, s) in seg.samples.iter().enumerate() {
        if i + 1 < n && s.kappa <= 0.0 {
            return Err(Error::Inconsistency(format!(
                "kappa = {} at interior sample {i}",
                s.kappa
            )));
        }
    }
    let h = FRAC_PI_2 / (n - 1) as f64;
    let vals: Vec<f64> = seg
        .samples
        .iter()
        .map(|s| s.y * s.gamma.cos() / s.kappa)
        .collect();
    Ok(integrate_uniform(h, &vals))
}

/// Shoelace area of the arc closed by its axis projections
/// (arc, then down the y axis to the origin, then along the x axis back to P).
pub fn segment_area_shoelace(seg: &CurveSegment) -> f64 {
    let mut pts: Vec<Point> = seg.samples.iter().map(|s| [s.x, s.y]).collect();
    pts.push([0.0, 0.0]);
    crate::geom::shoelace_area(&pts).abs()
}

fn integrate_uniform(h: f64, vals: &[f64]) -> f64 {
    let m = vals.len() - 1;
    let mut total = 0.0;
    let even_part = if m.is_multiple_of(2) { m } else { m - 3 };
    let mut i = 0;
    while i + 2 <= even_part {
        total += h / 3.0 * (vals[i] + 4.0 * vals[i + 1] + vals[i + 2]);
        i += 2;
    }
    if !m.is_multiple_of(2) {
        let j = m - 3;
        total += 3.0 * h / 8.0 * (vals[j] + 3.0 * vals[j + 1] + 3.0 * vals[j + 2] + vals[j + 3]);
    }
    total
}

/// One vertex of an assembled steady shape, decorated with the analytic
/// tangent angle (folded to `[0, pi/2]`) and curvature it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapePoint {
    pub x: f64,
    pub y: f64,
    pub gamma: f64,
    pub kappa: f64,
}

/// A closed, convex, D2-symmetric steady shape (counterclockwise).
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyShape {
    pub points: Vec<ShapePoint>,
    pub area: f64,
    pub local_params: LocalParams,
    pub nonlocal_params: Option<NonlocalParams>,
}

impl SteadyShape {
    /// Vertex coordinates only.
    pub fn points_xy(&self) -> Vec<Point> {
        self.points.iter().map(|p| [p.x, p.y]).collect()
    }

    pub fn diameter(&self) -> f64 {
        crate::geom::bbox_diagonal(&self.points_xy())
    }
}

/// Close the quarter arc into the full shape by reflecting across both axes.
///
/// Counterclockwise order starting from the rightmost point; the seam
/// vertices P, Q and their mirrors appear exactly once. Area is `4 *
/// area_bar`.
pub fn assemble_shape(seg: &CurveSegment) -> SteadyShape {
    let n = seg.samples.len();
    let mut points = Vec::with_capacity(4 * n - 4);
    // quadrant I: rightmost to top
    for s in seg.samples.iter() {
        points.push(ShapePoint {
            x: -s.x,
            y: s.y,
            gamma: s.gamma,
            kappa: s.kappa,
        });
    }
    // quadrant II: top to leftmost (skip shared Q)
    for s in seg.samples.iter().rev().skip(1) {
        points.push(ShapePoint {
            x: s.x,
            y: s.y,
            gamma: s.gamma,
            kappa: s.kappa,
        });
    }
    // quadrant III: leftmost to bottom (skip shared P)
    for s in seg.samples.iter().skip(1) {
        points.push(ShapePoint {
            x: s.x,
            y: -s.y,
            gamma: s.gamma,
            kappa: s.kappa,
        });
    }
    // quadrant IV: bottom back toward the start (skip both shared vertices)
    for s in seg.samples.iter().rev().skip(1).take(n - 2) {
        points.push(ShapePoint {
            x: -s.x,
            y: -s.y,
            gamma: s.gamma,
            kappa: s.kappa,
        });
    }
    SteadyShape {
        points,
        area: 4.0 * seg.area_bar,
        local_params: seg.params,
        nonlocal_params: None,
    }
}

/// Status of one checked curvature-profile property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    /// `(y, value)` at the failing point, when one exists.
    pub witness: Option<(f64, f64)>,
}

/// Result of the seven curvature-profile checks.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    /// No check failed (not-applicable entries count as fine).
    pub fn all_good(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

fn pass(name: &'static str) -> PropertyCheck {
    PropertyCheck {
        name,
        status: CheckStatus::Pass,
        witness: None,
    }
}

fn na(name: &'static str) -> PropertyCheck {
    PropertyCheck {
        name,
        status: CheckStatus::NotApplicable,
        witness: None,
    }
}

fn verdict(name: &'static str, ok: bool, witness: Option<(f64, f64)>) -> PropertyCheck {
    PropertyCheck {
        name,
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        witness: if ok { None } else { witness },
    }
}

/// Run the seven curvature-profile checks numerically.
///
/// For `q = 0` the profile is constant: realness through origin-maximum are
/// reported as they stand (the second derivative check degenerates to 0 = 0)
/// and the decay, unique-zero and monotonicity checks are not applicable.
pub fn property_report(p: &LocalParams) -> PropertyReport {
    let c1 = p.c1_hat;
    let q = p.q;
    let kappa0 = 1.0 / c1;

    // 1. realness: the implementation is real arithmetic end to end.
    let real = pass("real-valued");

    // 3. kappa(0) = 1/c1_hat exactly
    let at_origin = kappa_raw(p, 0.0);
    let origin_value = verdict(
        "origin-value",
        (at_origin - kappa0).abs() <= 1e-14 * kappa0,
        Some((0.0, at_origin)),
    );

    // 4. kappa'(0) = 0 and kappa''(0) = -4 q^2 / c1_hat by central differences
    let scale = if q > 0.0 { 1.0 / q } else { c1 };
    let h = 1e-3 * scale;
    let k0 = kappa_raw(p, 0.0);
    let kh = kappa_raw(p, h);
    let k2h = kappa_raw(p, 2.0 * h);
    // even extension: kappa(-y) = kappa(y)
    let d1 = 0.0f64; // (kh - kh) / 2h by symmetry
    let d2 = 2.0 * (kh - k0) / (h * h);
    let expected = -4.0 * q * q / c1;
    let origin_maximum = verdict(
        "origin-maximum",
        d1.abs() <= 1e-12 * kappa0 && (d2 - expected).abs() <= 1e-5 * expected.abs(),
        Some((0.0, d2)),
    );
    let _ = k2h;

    if q == 0.0 {
        return PropertyReport {
            checks: vec![
                real,
                pass("continuous"),
                origin_value,
                origin_maximum,
                na("vanishes-at-infinity"),
                na("unique-zero"),
                na("monotone-to-zero"),
            ],
        };
    }

    let y0 = dawson_peak().0 / q;

    // 2. continuity: bounded jumps on a fine grid over [0, 2 y0]
    let n_grid = 4096;
    let mut max_jump = 0.0f64;
    let mut jump_at = 0.0;
    let mut kmin = f64::INFINITY;
    let mut kmax = f64::NEG_INFINITY;
    let mut prev = kappa_raw(p, 0.0);
    for i in 1..=n_grid {
        let y = 2.0 * y0 * i as f64 / n_grid as f64;
        let k = kappa_raw(p, y);
        kmin = kmin.min(k);
        kmax = kmax.max(k);
        if (k - prev).abs() > max_jump {
            max_jump = (k - prev).abs();
            jump_at = y;
        }
        prev = k;
    }
    let continuous = verdict(
        "continuous",
        max_jump <= 32.0 * (kmax - kmin) / n_grid as f64,
        Some((jump_at, max_jump)),
    );

    // 5. kappa -> 0 along y_n = 2^n: once past the undershoot hump the
    // magnitude decreases monotonically below 1e-6 / c1_hat
    let n_start = (2.0 / q).log2().ceil().max(0.0) as i32;
    let mut ok5 = false;
    let mut wit5 = None;
    let mut prev_mag = f64::INFINITY;
    for e in n_start..(n_start + 80).min(1020) {
        let y = (e as f64).exp2();
        let mag = kappa_raw(p, y).abs();
        if mag >= prev_mag {
            wit5 = Some((y, mag));
            break;
        }
        if mag < 1e-6 * kappa0 {
            ok5 = true;
            break;
        }
        prev_mag = mag;
    }
    let vanishes = verdict("vanishes-at-infinity", ok5, wit5);

    // 6. exactly one sign change of kappa on (0, 4 y0], and exactly one for
    // iota - zeta with iota = (2q/sqrt(pi)) e^{q^2 y^2}, zeta = 2 q^2 y erfi(q y)
    let mut kappa_changes = 0;
    let mut iz_changes = 0;
    let mut wit6 = None;
    let mut prev_k = kappa_raw(p, 1e-12 * y0);
    let mut prev_iz = f64::NAN;
    for i in 1..=n_grid {
        let y = 4.0 * y0 * i as f64 / n_grid as f64;
        let k = kappa_raw(p, y);
        if prev_k.signum() != k.signum() {
            kappa_changes += 1;
            wit6 = Some((y, k));
        }
        prev_k = k;
        let z = q * y;
        let e = (z * z).exp();
        let iota = std::f64::consts::FRAC_2_SQRT_PI * q * e;
        let zeta = 2.0 * q * q * y * e * crate::specfun::erfi_scaled(z).unwrap_or(f64::NAN);
        let iz = iota - zeta;
        if i > 1 && prev_iz.signum() != iz.signum() {
            iz_changes += 1;
        }
        prev_iz = iz;
    }
    let unique_zero = verdict("unique-zero", kappa_changes == 1 && iz_changes == 1, wit6);

    // 7. no interior extremum: kappa' < 0 on (0, y0) by central differences
    let mut ok7 = true;
    let mut wit7 = None;
    for i in 1..512 {
        let y = y0 * i as f64 / 512.0;
        let h = (1e-4 / q).min(0.5 * y);
        let slope = (kappa_raw(p, y + h) - kappa_raw(p, y - h)) / (2.0 * h);
        if slope >= 0.0 {
            ok7 = false;
            wit7 = Some((y, slope));
            break;
        }
    }
    let monotone = verdict("monotone-to-zero", ok7, wit7);

    PropertyReport {
        checks: vec![
            real,
            continuous,
            origin_value,
            origin_maximum,
            vanishes,
            unique_zero,
            monotone,
        ],
    }
}
