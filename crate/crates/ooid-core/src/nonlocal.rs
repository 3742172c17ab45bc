//! The map between local and nonlocal parameterizations.
//!
//! A realized local shape with coefficients `(c1_hat, q)` encloses an area
//! `A`, which identifies the nonlocal abrasion coefficient `c1 = c1_hat / A`
//! at the same `q`. At fixed `q` that map is strictly decreasing and onto the
//! positive reals, so it can be inverted by bracketed bisection; both
//! directions together solve the nonlocal steady-state problem.

use crate::error::{Error, Result};
use crate::local::{assemble_shape, c1_hat_crit, realize_segment, LocalParams, SteadyShape};
use crate::roots::bisect_secant;

/// Sampling used for every area evaluation inside the map, independent of the
/// caller's sampling, so the map is a deterministic function of `(c1_hat, q)`.
const MAP_SAMPLES: usize = 1024;

/// Physical parameters of the nonlocal evolution law.
///
/// `c3` scales time only; steady-state computations never consume it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalParams {
    c1: f64,
    c2: f64,
    c3: f64,
}

impl NonlocalParams {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        Self::with_c3(c1, c2, 1.0)
    }

    pub fn with_c3(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (what, v) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !v.is_finite() {
                return Err(Error::NonFinite { what, value: v });
            }
        }
        if c1 <= 0.0 {
            return Err(Error::Domain(format!("c1 must be positive, got {c1}")));
        }
        if c2 < 0.0 {
            return Err(Error::Domain(format!("c2 must be nonnegative, got {c2}")));
        }
        if c3 <= 0.0 {
            return Err(Error::Domain(format!("c3 must be positive, got {c3}")));
        }
        Ok(Self { c1, c2, c3 })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }

    /// Shared shape parameter `q = sqrt(c2 / (2 c1))`, invariant under the
    /// local map.
    pub fn q(&self) -> f64 {
        (self.c2 / (2.0 * self.c1)).sqrt()
    }
}

/// Forward map at fixed `q`: the nonlocal abrasion coefficient
/// `c1 = c1_hat / A(c1_hat)` of the realized shape.
///
/// Requires strict `c1_hat < c1_hat_crit(q)` (any `c1_hat` when `q = 0`).
pub fn nonlocal_c1(c1_hat: f64, q: f64) -> Result<f64> {
    let p = LocalParams::new(c1_hat, q)?;
    if q == 0.0 {
        // circle of radius c1_hat: A = pi c1_hat^2
        return Ok(1.0 / (std::f64::consts::PI * c1_hat));
    }
    let seg = realize_segment(&p, MAP_SAMPLES)?;
    Ok(c1_hat / (4.0 * seg.area_bar))
}

/// Inverse map at fixed `q`: the `c1_hat` whose realized shape reproduces the
/// given nonlocal `c1`, to `|F(c1_hat) - c1| / c1 < 1e-10`.
pub fn local_c1_hat(c1: f64, q: f64) -> Result<f64> {
    if !c1.is_finite() {
        return Err(Error::NonFinite { what: "c1", value: c1 });
    }
    if !q.is_finite() {
        return Err(Error::NonFinite { what: "q", value: q });
    }
    if c1 <= 0.0 {
        return Err(Error::Domain(format!("c1 must be positive, got {c1}")));
    }
    if q < 0.0 {
        return Err(Error::Domain(format!("q must be nonnegative, got {q}")));
    }
    if q == 0.0 {
        return Ok(1.0 / (std::f64::consts::PI * c1));
    }
    let crit = c1_hat_crit(q)?;
    let mut lo = 1e-3 * crit;
    let mut hi = (1.0 - 1e-6) * crit;
    // expand toward the endpoints until the target is enclosed; the map
    // diverges at 0 and vanishes at the critical value, so this terminates
    let mut f_lo = nonlocal_c1(lo, q)? - c1;
    while f_lo < 0.0 {
        lo *= 0.1;
        if lo < 1e-300 {
            return Err(Error::Bracket {
                what: "inverse map bracket toward zero",
                lo,
                hi,
            });
        }
        f_lo = nonlocal_c1(lo, q)? - c1;
    }
    let mut f_hi = nonlocal_c1(hi, q)? - c1;
    while f_hi > 0.0 {
        let gap = crit - hi;
        if gap < 1e-13 * crit {
            return Err(Error::Bracket {
                what: "inverse map bracket toward the critical value",
                lo,
                hi,
            });
        }
        hi = crit - 0.1 * gap;
        f_hi = nonlocal_c1(hi, q)? - c1;
    }
    let _ = (f_lo, f_hi);
    let root = bisect_secant(
        |c1_hat| nonlocal_c1(c1_hat, q).map(|v| v - c1).unwrap_or(f64::NAN),
        lo,
        hi,
        0.0,
        1e-10 * c1,
        200,
    )?;
    let residual = (nonlocal_c1(root, q)? - c1).abs() / c1;
    if residual > 1e-10 {
        return Err(Error::Accuracy {
            estimate: root,
            requested: 1e-10,
            achieved: residual,
        });
    }
    Ok(root)
}

/// Solve the nonlocal steady-state problem: the unique smooth shape for the
/// given physical parameters, sampled with `n` points per quarter arc.
pub fn solve_steady(np: &NonlocalParams, n: usize) -> Result<SteadyShape> {
    let q = np.q();
    let c1_hat = local_c1_hat(np.c1, q)?;
    let p = LocalParams::new(c1_hat, q)?;
    let seg = realize_segment(&p, n)?;
    let mut shape = assemble_shape(&seg);
    shape.nonlocal_params = Some(*np);
    Ok(shape)
}

/// Max-norm steadiness residual `-1 + c1 A kappa + c2 A y cos(gamma)` over
/// the analytic samples of an assembled shape.
pub fn steady_residual(shape: &SteadyShape, np: &NonlocalParams) -> f64 {
    let a = shape.area;
    shape
        .points
        .iter()
        .map(|pt| {
            (-1.0 + np.c1 * a * pt.kappa + np.c2 * a * pt.y.abs() * pt.gamma.cos()).abs()
        })
        .fold(0.0, f64::max)
}

/// One row of a monotonicity sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub c1_hat: f64,
    pub area: f64,
    pub c1: f64,
}

/// Forward-map table over geometrically spaced `c1_hat`, the numerical
/// witness for injectivity (strictly decreasing `c1` column) and for the
/// range of the map.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSweep {
    pub q: f64,
    pub rows: Vec<SweepRow>,
}

/// Sweep the forward map at fixed `q > 0` with `n_rows >= 8` rows spanning
/// `(1e-3, 1 - 1e-3) * c1_hat_crit` geometrically.
pub fn sweep(q: f64, n_rows: usize) -> Result<MapSweep> {
    if n_rows < 8 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 8 rows, got {n_rows}"
        )));
    }
    if q <= 0.0 || !q.is_finite() {
        return Err(Error::Domain(format!("sweep requires q > 0, got {q}")));
    }
    let crit = c1_hat_crit(q)?;
    let eps = 1e-3;
    let lo = eps * crit;
    let hi = (1.0 - eps) * crit;
    let ratio = hi / lo;
    let mut rows = Vec::with_capacity(n_rows);
    for i in 0..n_rows {
        let c1_hat = lo * ratio.powf(i as f64 / (n_rows - 1) as f64);
        let p = LocalParams::new(c1_hat, q)?;
        let seg = realize_segment(&p, MAP_SAMPLES)?;
        let area = 4.0 * seg.area_bar;
        rows.push(SweepRow {
            c1_hat,
            area,
            c1: c1_hat / area,
        });
    }
    for (i, w) in rows.windows(2).enumerate() {
        if w[1].c1.partial_cmp(&w[0].c1) != Some(std::cmp::Ordering::Less) {
            return Err(Error::MonotonicityViolation {
                what: "sweep c1 column must decrease strictly",
                index: i + 1,
            });
        }
    }
    Ok(MapSweep { q, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::SmallRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn params_validation_and_q() {
        let np = NonlocalParams::new(1.0, 0.0).unwrap();
        assert_eq!(np.q(), 0.0);
        assert_eq!(np.c3(), 1.0);
        assert_eq!(NonlocalParams::new(1.0, 2.0).unwrap().q(), 1.0);
        assert_eq!(NonlocalParams::new(0.5, 0.25).unwrap().q(), 0.5);
        assert!(NonlocalParams::new(0.0, 1.0).is_err());
        assert!(NonlocalParams::new(1.0, -1.0).is_err());
        assert!(NonlocalParams::with_c3(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn forward_map_circle_case() {
        assert!((nonlocal_c1(1.0, 0.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((nonlocal_c1(2.0, 0.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn forward_map_frozen_baseline() {
        // regression baseline pinned at first build; also below the circle
        // bound 1/(pi c1_hat) since friction fattens the shape
        let f = nonlocal_c1(1.0, 0.5).unwrap();
        assert!(f > 0.0 && f < 1.0 / PI);
        assert!((f - 0.1236394599125551).abs() < 1e-9, "F(1,0.5)={f:.16}");
    }

    #[test]
    fn forward_map_rejects_outside_realizable_set() {
        assert!(matches!(
            nonlocal_c1(2.0, 0.5),
            Err(Error::NotRealizable { .. })
        ));
    }

    #[test]
    fn inverse_map_circle_case() {
        assert!((local_c1_hat(1.0 / PI, 0.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn map_round_trips() {
        let mut rng = SmallRng::seed_from_u64(23);
        for &q in &[0.3, 0.8, 1.5] {
            let crit = crate::local::c1_hat_crit(q).unwrap();
            for _ in 0..6 {
                let c1_hat = rng.random_range(0.02..0.95) * crit;
                let c1 = nonlocal_c1(c1_hat, q).unwrap();
                let back = local_c1_hat(c1, q).unwrap();
                assert!(
                    ((back - c1_hat) / c1_hat).abs() < 1e-8,
                    "q={q}: {c1_hat} -> {c1} -> {back}"
                );
            }
            for _ in 0..6 {
                let c1 = rng.random_range(0.05..50.0);
                let c1_hat = local_c1_hat(c1, q).unwrap();
                let fwd = nonlocal_c1(c1_hat, q).unwrap();
                assert!(((fwd - c1) / c1).abs() < 1e-8, "q={q}: c1={c1}");
            }
        }
    }

    #[test]
    fn inverse_map_limit_direction() {
        // larger targets force smaller c1_hat
        let a = local_c1_hat(1.0, 0.5).unwrap();
        let b = local_c1_hat(100.0, 0.5).unwrap();
        let c = local_c1_hat(10000.0, 0.5).unwrap();
        assert!(b < a && c < b);
        assert!(c < 1e-3);
    }

    #[test]
    fn steady_circle_laws() {
        let np = NonlocalParams::new(1.0 / PI, 0.0).unwrap();
        let shape = solve_steady(&np, 256).unwrap();
        assert!((shape.area - PI).abs() < 1e-6);
        let radius = shape
            .points
            .iter()
            .map(|p| p.x.hypot(p.y))
            .fold(0.0, f64::max);
        assert!((radius - 1.0).abs() < 1e-10);
        assert!(steady_residual(&shape, &np) < 1e-8);

        let np2 = NonlocalParams::new(0.1, 0.0).unwrap();
        let shape2 = solve_steady(&np2, 256).unwrap();
        let r2 = shape2.points.iter().map(|p| p.x.hypot(p.y)).fold(0.0, f64::max);
        assert!((r2 - 1.0 / (0.1 * PI)).abs() < 1e-8 / 0.1);
    }

    #[test]
    fn steady_generic_pipeline() {
        let np = NonlocalParams::new(0.2, 0.1).unwrap();
        assert!((np.q() - 0.5).abs() < 1e-15);
        let shape = solve_steady(&np, 512).unwrap();
        assert_eq!(shape.local_params.q(), np.q());
        assert!(steady_residual(&shape, &np) < 1e-6);
        assert!(shape.nonlocal_params.is_some());
        // geometry regression baseline pinned at first build
        assert!(
            (shape.area - 4.425718240588163).abs() < 1e-6,
            "area={:.16}",
            shape.area
        );
    }

    #[test]
    fn q_is_invariant_under_the_map() {
        let np = NonlocalParams::new(0.37, 0.22).unwrap();
        let shape = solve_steady(&np, 128).unwrap();
        assert_eq!(shape.local_params.q(), np.q());
    }

    #[test]
    fn sweep_is_strictly_monotone_and_spans_decades() {
        let s = sweep(0.5, 16).unwrap();
        assert_eq!(s.rows.len(), 16);
        for w in s.rows.windows(2) {
            assert!(w[1].c1 < w[0].c1);
            assert!(w[1].c1_hat > w[0].c1_hat);
        }
        let first = s.rows.first().unwrap();
        let last = s.rows.last().unwrap();
        assert!(first.c1 / last.c1 >= 1e3);
        assert!(last.area / first.area > 1e2);
        let s1 = sweep(1.0, 16).unwrap();
        for w in s1.rows.windows(2) {
            assert!(w[1].c1 < w[0].c1);
        }
    }

    #[test]
    fn sweep_argument_errors() {
        assert!(sweep(0.5, 4).is_err());
        assert!(sweep(0.0, 16).is_err());
        assert!(sweep(f64::NAN, 16).is_err());
    }
}
