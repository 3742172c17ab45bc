//! Ellipses are not steady shapes: an executable demonstration.
//!
//! Forcing the steadiness condition at the two axis endpoints of an ellipse
//! with semi-axes `a > b` pins both coefficients,
//!
//! ```text
//! c1 = b / (a^2 pi),      c2 = (a^3 - b^3) / (a^4 b^2 pi),
//! ```
//!
//! yet the residual at any third parameter value stays nonzero unless
//! `a = b`. The residual is evaluated twice: from the general steadiness
//! bracket on the parametric ellipse and from the algebraically reduced
//! quarter-turn expression; the two routes must agree to rounding.

use crate::error::{Error, Result};

/// Semi-axes of an axis-aligned ellipse, `a >= b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSpec {
    a: f64,
    b: f64,
}

impl EllipseSpec {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite { what: "a", value: a });
        }
        if !b.is_finite() {
            return Err(Error::NonFinite { what: "b", value: b });
        }
        if !(b > 0.0 && a >= b) {
            return Err(Error::Domain(format!(
                "semi-axes must satisfy a >= b > 0, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Abrasion coefficient forced by steadiness at the major-axis endpoint.
pub fn forced_c1(e: &EllipseSpec) -> f64 {
    e.b / (e.a * e.a * std::f64::consts::PI)
}

/// Friction coefficient forced by steadiness at the top of the minor axis;
/// zero exactly when `a = b`.
pub fn forced_c2(e: &EllipseSpec) -> f64 {
    let (a, b) = (e.a, e.b);
    (a * a * a - b * b * b) / (a * a * a * a * b * b * std::f64::consts::PI)
}

/// Steadiness residual on the ellipse at parameter `phi` in `[0, pi/2]`,
/// using the forced coefficients: the general bracket
/// `-1 + c1 A kappa + c2 A y cos(gamma)` on `x = a cos(phi)`,
/// `y = b sin(phi)`.
pub fn residual(e: &EllipseSpec, phi: f64) -> Result<f64> {
    if !phi.is_finite() {
        return Err(Error::NonFinite {
            what: "phi",
            value: phi,
        });
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&phi) {
        return Err(Error::Domain(format!(
            "phi must lie in [0, pi/2], got {phi}"
        )));
    }
    let (a, b) = (e.a, e.b);
    let (s, c) = phi.sin_cos();
    let w = (a * a * s * s + b * b * c * c).sqrt();
    let area = std::f64::consts::PI * a * b;
    let kappa = a * b / (w * w * w);
    let y = b * s;
    // folded tangent inclination: |t_x| of the unit tangent (-a sin, b cos)/w
    let cos_gamma = a * s / w;
    Ok(-1.0 + forced_c1(e) * area * kappa + forced_c2(e) * area * y * cos_gamma)
}

/// The algebraically reduced residual at `phi = pi/4`:
/// `-1 + b^3 / ((a^2 + b^2)/2)^{3/2} + (sqrt(2)/2) (a^3 - b^3) / (a^3 sqrt(1 + b^2/a^2))`.
pub fn residual_quarter_form(e: &EllipseSpec) -> f64 {
    let (a, b) = (e.a, e.b);
    let mid = 0.5 * (a * a + b * b);
    let growth = b * b * b / (mid * mid.sqrt());
    let friction = std::f64::consts::FRAC_1_SQRT_2 * (a * a * a - b * b * b)
        / (a * a * a * (1.0 + b * b / (a * a)).sqrt());
    -1.0 + growth + friction
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn e(a: f64, b: f64) -> EllipseSpec {
        EllipseSpec::new(a, b).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(EllipseSpec::new(1.0, 2.0).is_err());
        assert!(EllipseSpec::new(2.0, 0.0).is_err());
        assert!(EllipseSpec::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn forced_coefficients() {
        assert!((forced_c1(&e(1.0, 1.0)) - 1.0 / PI).abs() < 1e-16);
        assert!((forced_c1(&e(2.0, 1.0)) - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert!((forced_c1(&e(3.0, 2.0)) - 2.0 / (9.0 * PI)).abs() < 1e-16);
        assert_eq!(forced_c2(&e(1.0, 1.0)), 0.0);
        assert!((forced_c2(&e(2.0, 1.0)) - 7.0 / (16.0 * PI)).abs() < 1e-16);
        assert!((forced_c2(&e(3.0, 2.0)) - 19.0 / (324.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn residual_vanishes_at_both_construction_points() {
        for spec in [e(2.0, 1.0), e(3.0, 2.0), e(1.5, 0.4)] {
            assert!(residual(&spec, 0.0).unwrap().abs() < 1e-12);
            assert!(residual(&spec, FRAC_PI_2).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn circle_is_steady_everywhere() {
        let spec = e(1.0, 1.0);
        for k in 0..=32 {
            let phi = FRAC_PI_2 * k as f64 / 32.0;
            assert!(residual(&spec, phi).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn quarter_turn_residual_two_routes() {
        let spec = e(2.0, 1.0);
        let general = residual(&spec, FRAC_PI_4).unwrap();
        let reduced = residual_quarter_form(&spec);
        assert!(
            (general - reduced).abs() < 1e-12,
            "general={general:.16}, reduced={reduced:.16}"
        );
        assert!((general - (-0.1936191966570632)).abs() < 1e-12, "r={general:.16}");
        assert!((general - (-0.1936)).abs() < 1e-3);
    }

    #[test]
    fn noncircular_ellipses_are_never_steady() {
        let mut prev_max = f64::INFINITY;
        for ratio in [1.1, 1.01, 1.001] {
            let spec = e(ratio, 1.0);
            let max = (0..=64)
                .map(|k| residual(&spec, FRAC_PI_2 * k as f64 / 64.0).unwrap().abs())
                .fold(0.0f64, f64::max);
            assert!(max > 0.0, "ratio {ratio}: residual vanished");
            assert!(max < prev_max, "residual must shrink as a -> b");
            prev_max = max;
        }
        assert!(prev_max < 1e-2);
    }

    #[test]
    fn matches_marker_residual_pointwise() {
        // sampling the ellipse as flow markers with the forced constants
        // reproduces the analytic residual at every marker
        let spec = e(2.0, 1.0);
        let np =
            crate::nonlocal::NonlocalParams::new(forced_c1(&spec), forced_c2(&spec)).unwrap();
        let st = crate::flow::FlowState::ellipse(2.0, 1.0, 512).unwrap();
        let res = crate::flow::residual(&st, &np).unwrap();
        for (k, r) in res.per_marker.iter().enumerate() {
            let phi = std::f64::consts::TAU * k as f64 / 512.0;
            // fold into the first quadrant by the double mirror symmetry
            let p = phi.rem_euclid(PI);
            let folded = if p > FRAC_PI_2 { PI - p } else { p };
            let want = residual(&spec, folded).unwrap();
            assert!((r - want).abs() < 1e-3, "marker {k}: {r} vs {want}");
        }
    }

    #[test]
    fn residual_domain() {
        let spec = e(2.0, 1.0);
        assert!(residual(&spec, -0.1).is_err());
        assert!(residual(&spec, 2.0).is_err());
        assert!(residual(&spec, f64::NAN).is_err());
    }
}
