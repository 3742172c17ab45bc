//! Marker-particle simulator of the full nonlocal evolution law
//!
//! ```text
//! v = c3 * (-1 + c1 A kappa + c2 A y cos(gamma))    along the inward normal,
//! ```
//!
//! used to verify that synthesized steady shapes are numerically stationary
//! and to explore convergence toward them from nearby initial shapes. The
//! discretization is deliberately plain: explicit first-order time stepping
//! with a displacement cap, circumscribed-circle curvature on marker triples,
//! and arclength-uniform redistribution after each step to keep tangential
//! drift from destroying the spacing.

use crate::error::{Error, Result};
use crate::geom::{
    bbox_diagonal, is_simple, marker_geometry, resample_closed, shoelace_area, MarkerGeometry,
    Point,
};
use crate::local::SteadyShape;
use crate::nonlocal::NonlocalParams;

/// A closed counterclockwise marker polyline with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    markers: Vec<Point>,
    time: f64,
    area: f64,
    step_count: u64,
}

impl FlowState {
    /// Wrap a marker polyline (at least 32 markers, simple, nonzero area).
    /// Clockwise input is reversed into counterclockwise orientation.
    pub fn new(markers: Vec<Point>) -> Result<Self> {
        if markers.len() < 32 {
            return Err(Error::InvalidArgument(format!(
                "need at least 32 markers, got {}",
                markers.len()
            )));
        }
        for (i, m) in markers.iter().enumerate() {
            if !(m[0].is_finite() && m[1].is_finite()) {
                return Err(Error::NonFinite {
                    what: "marker coordinate",
                    value: if m[0].is_finite() { m[1] } else { m[0] },
                });
            }
            let next = markers[(i + 1) % markers.len()];
            if next == *m {
                return Err(Error::Degenerate { index: i });
            }
        }
        let mut markers = markers;
        let mut area = shoelace_area(&markers);
        if area < 0.0 {
            markers.reverse();
            area = -area;
        }
        if area == 0.0 {
            return Err(Error::Inconsistency("marker polyline encloses no area".into()));
        }
        if !is_simple(&markers) {
            return Err(Error::Topology { step: 0 });
        }
        Ok(Self {
            markers,
            time: 0.0,
            area,
            step_count: 0,
        })
    }

    /// Markers resampled uniformly from a synthesized steady shape.
    pub fn from_shape(shape: &SteadyShape, n_markers: usize) -> Result<Self> {
        Self::new(resample_closed(&shape.points_xy(), n_markers))
    }

    pub fn circle(radius: f64, n_markers: usize) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        Self::new(
            (0..n_markers)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / n_markers as f64;
                    [radius * t.cos(), radius * t.sin()]
                })
                .collect(),
        )
    }

    /// Axis-aligned ellipse with semi-axes `a >= b`, parametrized uniformly
    /// in the elliptic angle.
    pub fn ellipse(a: f64, b: f64, n_markers: usize) -> Result<Self> {
        if b <= 0.0 || a < b || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "ellipse semi-axes must satisfy a >= b > 0, got a={a}, b={b}"
            )));
        }
        Self::new(
            (0..n_markers)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / n_markers as f64;
                    [a * t.cos(), b * t.sin()]
                })
                .collect(),
        )
    }

    /// Uniformly scaled copy about the origin.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if factor <= 0.0 || !factor.is_finite() {
            return Err(Error::Domain(format!("scale factor must be positive, got {factor}")));
        }
        Self::new(
            self.markers
                .iter()
                .map(|m| [factor * m[0], factor * m[1]])
                .collect(),
        )
    }

    pub fn markers(&self) -> &[Point] {
        &self.markers
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn diameter(&self) -> f64 {
        bbox_diagonal(&self.markers)
    }
}

/// Time-stepping controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowConfig {
    /// Fraction of the heuristic stable step actually taken.
    pub dt_safety: f64,
    pub max_steps: u64,
    /// Redistribute markers to uniform arclength every this many steps
    /// (0 disables redistribution).
    pub redistribute_every: u64,
    /// Stop once the max-norm residual falls below this.
    pub stop_residual: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            dt_safety: 0.2,
            max_steps: 10_000,
            redistribute_every: 1,
            stop_residual: 1e-6,
        }
    }
}

impl FlowConfig {
    fn validate(&self) -> Result<()> {
        if self.dt_safety <= 0.0 || self.dt_safety > 1.0 || self.dt_safety.is_nan() {
            return Err(Error::InvalidArgument(format!(
                "dt_safety must lie in (0, 1], got {}",
                self.dt_safety
            )));
        }
        if self.max_steps < 1 {
            return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per-marker curvature, folded tangent angle, height and inward normal.
pub fn geometry(state: &FlowState) -> Result<Vec<MarkerGeometry>> {
    marker_geometry(&state.markers)
}

/// Per-marker steadiness residual and its max norm.
#[derive(Debug, Clone)]
pub struct ResidualField {
    pub per_marker: Vec<f64>,
    pub max_abs: f64,
}

/// Steadiness residual `-1 + c1 A kappa_k + c2 A y_k cos(gamma_k)` per marker.
pub fn residual(state: &FlowState, np: &NonlocalParams) -> Result<ResidualField> {
    let geo = geometry(state)?;
    Ok(residual_from_geometry(state, np, &geo))
}

fn residual_from_geometry(
    state: &FlowState,
    np: &NonlocalParams,
    geo: &[MarkerGeometry],
) -> ResidualField {
    let a = state.area;
    let per_marker: Vec<f64> = geo
        .iter()
        .map(|g| -1.0 + np.c1() * a * g.kappa + np.c2() * a * g.y * g.gamma.cos())
        .collect();
    let max_abs = per_marker.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    ResidualField { per_marker, max_abs }
}

/// One explicit step: markers move by `c3 * r_k * dt` along the inward
/// normal (positive residual contracts). The step size is the safety
/// fraction of `min_spacing^2 / (c3 c1 A + c3 c2 A y_max + 1)`, further
/// capped so no marker moves more than a quarter of the minimum spacing.
pub fn step(state: &FlowState, np: &NonlocalParams, cfg: &FlowConfig) -> Result<FlowState> {
    cfg.validate()?;
    let geo = geometry(state)?;
    let res = residual_from_geometry(state, np, &geo);

    let n = state.markers.len();
    let mut min_spacing = f64::INFINITY;
    for i in 0..n {
        let a = state.markers[i];
        let b = state.markers[(i + 1) % n];
        min_spacing = min_spacing.min((a[0] - b[0]).hypot(a[1] - b[1]));
    }
    let y_max = geo.iter().fold(0.0f64, |m, g| m.max(g.y));
    let c3 = np.c3();
    let denom = c3 * np.c1() * state.area + c3 * np.c2() * state.area * y_max + 1.0;
    let mut dt = cfg.dt_safety * min_spacing * min_spacing / denom;
    let v_max = c3 * res.max_abs;
    if v_max > 0.0 {
        dt = dt.min(0.25 * min_spacing / v_max);
    }

    let mut markers: Vec<Point> = state
        .markers
        .iter()
        .zip(geo.iter().zip(&res.per_marker))
        .map(|(m, (g, r))| {
            let d = c3 * r * dt;
            [m[0] + d * g.normal[0], m[1] + d * g.normal[1]]
        })
        .collect();

    let next_step = state.step_count + 1;
    if cfg.redistribute_every > 0 && next_step.is_multiple_of(cfg.redistribute_every) {
        markers = resample_closed(&markers, n);
    }
    if !is_simple(&markers) {
        return Err(Error::Topology { step: next_step });
    }
    Ok(FlowState {
        area: shoelace_area(&markers),
        markers,
        time: state.time + dt,
        step_count: next_step,
    })
}

/// Why an evolution run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxSteps,
    /// Self-intersection detected; the report holds the last good state and
    /// the history up to it.
    Topology { step: u64 },
}

/// One row of the evolution time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryRow {
    pub step: u64,
    pub time: f64,
    pub area: f64,
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct EvolveReport {
    pub state: FlowState,
    pub converged: bool,
    pub history: Vec<HistoryRow>,
    pub stop: StopReason,
}

/// Iterate [`step`] until the max-norm residual drops below
/// `cfg.stop_residual` or `cfg.max_steps` steps were taken. No monotone decay
/// is guaranteed or asserted; the history records whatever happened.
pub fn evolve(state: FlowState, np: &NonlocalParams, cfg: &FlowConfig) -> Result<EvolveReport> {
    cfg.validate()?;
    let mut state = state;
    let mut history = Vec::new();
    let mut taken = 0u64;
    loop {
        let res = residual(&state, np)?;
        history.push(HistoryRow {
            step: state.step_count,
            time: state.time,
            area: state.area,
            max_residual: res.max_abs,
        });
        if res.max_abs < cfg.stop_residual {
            return Ok(EvolveReport {
                state,
                converged: true,
                history,
                stop: StopReason::Converged,
            });
        }
        if taken >= cfg.max_steps {
            return Ok(EvolveReport {
                state,
                converged: false,
                history,
                stop: StopReason::MaxSteps,
            });
        }
        match step(&state, np, cfg) {
            Ok(next) => {
                state = next;
                taken += 1;
            }
            Err(Error::Topology { step }) => {
                return Ok(EvolveReport {
                    state,
                    converged: false,
                    history,
                    stop: StopReason::Topology { step },
                });
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlocal::solve_steady;
    use std::f64::consts::PI;

    #[test]
    fn state_validation() {
        assert!(FlowState::circle(1.0, 16).is_err()); // too few markers
        assert!(FlowState::circle(-1.0, 64).is_err());
        let cw: Vec<Point> = (0..64)
            .map(|i| {
                let t = -std::f64::consts::TAU * i as f64 / 64.0;
                [t.cos(), t.sin()]
            })
            .collect();
        let st = FlowState::new(cw).unwrap(); // clockwise input normalized
        assert!(st.area() > 0.0);
        let mut dup: Vec<Point> = FlowState::circle(1.0, 64).unwrap().markers().to_vec();
        dup[3] = dup[4];
        assert!(matches!(FlowState::new(dup), Err(Error::Degenerate { .. })));
        // figure eight: self-intersecting input is a topology error
        let eight: Vec<Point> = (0..64)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / 64.0;
                [t.cos(), 0.5 * (2.0 * t).sin()]
            })
            .collect();
        assert!(matches!(FlowState::new(eight), Err(Error::Topology { .. })));
    }

    #[test]
    fn circle_geometry_is_exact() {
        let st = FlowState::circle(1.0, 256).unwrap();
        for g in geometry(&st).unwrap() {
            assert!((g.kappa - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn ellipse_tip_curvature() {
        // a=2, b=1: curvature at the major-axis endpoint is a/b^2 = 2
        let st = FlowState::ellipse(2.0, 1.0, 512).unwrap();
        let g = geometry(&st).unwrap();
        assert!((g[0].kappa - 2.0).abs() < 2e-3, "kappa={}", g[0].kappa);
    }

    #[test]
    fn convex_normals_point_inward() {
        let st = FlowState::ellipse(2.0, 1.0, 64).unwrap();
        let geo = geometry(&st).unwrap();
        for (m, g) in st.markers().iter().zip(geo) {
            // stepping along the normal must reduce the distance to the centroid (origin)
            let r0 = m[0].hypot(m[1]);
            let r1 = (m[0] + 1e-3 * g.normal[0]).hypot(m[1] + 1e-3 * g.normal[1]);
            assert!(r1 < r0);
        }
    }

    #[test]
    fn steady_circle_residual_and_displacement() {
        let np = NonlocalParams::new(1.0 / PI, 0.0).unwrap();
        let st = FlowState::circle(1.0, 256).unwrap();
        let res = residual(&st, &np).unwrap();
        assert!(res.max_abs < 1e-3);
        let next = step(&st, &np, &FlowConfig::default()).unwrap();
        let max_move = st
            .markers()
            .iter()
            .zip(next.markers())
            .map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]))
            .fold(0.0f64, f64::max);
        assert!(max_move < 1e-6, "moved {max_move}");
    }

    #[test]
    fn oversized_circle_contracts_undersized_grows() {
        let np = NonlocalParams::new(1.0 / PI, 0.0).unwrap();
        let cfg = FlowConfig::default();
        let mut big = FlowState::circle(2.0, 128).unwrap();
        for _ in 0..50 {
            let next = step(&big, &np, &cfg).unwrap();
            assert!(next.area() < big.area());
            big = next;
        }
        let mut small = FlowState::circle(0.5, 128).unwrap();
        for _ in 0..50 {
            let next = step(&small, &np, &cfg).unwrap();
            assert!(next.area() > small.area());
            small = next;
        }
    }

    #[test]
    fn synthesized_shape_is_stationary_under_the_flow() {
        let np = NonlocalParams::new(0.2, 0.1).unwrap();
        let shape = solve_steady(&np, 512).unwrap();
        let st = FlowState::from_shape(&shape, 512).unwrap();
        let res = residual(&st, &np).unwrap();
        assert!(res.max_abs < 1e-4, "max residual {}", res.max_abs);
        let next = step(&st, &np, &FlowConfig::default()).unwrap();
        let max_move = st
            .markers()
            .iter()
            .zip(next.markers())
            .map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]))
            .fold(0.0f64, f64::max);
        assert!(max_move < 1e-6 * st.diameter());
    }

    #[test]
    fn residual_refines_at_second_order() {
        let np = NonlocalParams::new(0.2, 0.1).unwrap();
        let shape = solve_steady(&np, 2048).unwrap();
        let r: Vec<f64> = [128usize, 256, 512]
            .iter()
            .map(|&n| {
                let st = FlowState::from_shape(&shape, n).unwrap();
                residual(&st, &np).unwrap().max_abs
            })
            .collect();
        let order01 = (r[0] / r[1]).log2();
        let order12 = (r[1] / r[2]).log2();
        assert!(
            order01 > 1.5 && order01 < 2.8 && order12 > 1.5 && order12 < 2.8,
            "orders {order01:.2}, {order12:.2} from residuals {r:?}"
        );
    }

    #[test]
    fn mirror_equivariance_of_one_step() {
        let np = NonlocalParams::new(0.2, 0.1).unwrap();
        let cfg = FlowConfig::default();
        let st = FlowState::ellipse(1.4, 0.9, 128).unwrap();
        let stepped = step(&st, &np, &cfg).unwrap();
        for (axis, flip) in [(1usize, [1.0, -1.0]), (0usize, [-1.0, 1.0])] {
            let _ = axis;
            // reflect, then reverse to restore counterclockwise order with the
            // same starting marker
            let mut mirrored: Vec<Point> = st
                .markers()
                .iter()
                .map(|m| [m[0] * flip[0], m[1] * flip[1]])
                .collect();
            mirrored[1..].reverse();
            let mst = FlowState::new(mirrored).unwrap();
            let mstepped = step(&mst, &np, &cfg).unwrap();
            let n = st.markers().len();
            for j in 0..n {
                let expect = stepped.markers()[j];
                let got = mstepped.markers()[(n - j) % n];
                assert!(
                    (got[0] - expect[0] * flip[0]).abs() < 1e-10
                        && (got[1] - expect[1] * flip[1]).abs() < 1e-10,
                    "axis flip {flip:?}, marker {j}"
                );
            }
        }
    }

    #[test]
    fn circle_relaxes_to_steady_radius() {
        // R = 1/(pi c1): flowing from +-10% recovers it to 1%
        let np = NonlocalParams::new(1.0 / PI, 0.0).unwrap();
        let cfg = FlowConfig {
            stop_residual: 1e-4,
            max_steps: 40_000,
            ..FlowConfig::default()
        };
        for r0 in [1.1, 0.9] {
            let report = evolve(FlowState::circle(r0, 128).unwrap(), &np, &cfg).unwrap();
            assert!(report.converged, "did not converge from r0={r0}");
            let r_final = (report.state.area() / PI).sqrt();
            assert!((r_final - 1.0).abs() < 0.01, "r_final={r_final}");
        }
    }

    #[test]
    fn evolve_from_steady_shape_converges_immediately() {
        let np = NonlocalParams::new(0.2, 0.1).unwrap();
        let shape = solve_steady(&np, 512).unwrap();
        let st = FlowState::from_shape(&shape, 512).unwrap();
        let cfg = FlowConfig {
            stop_residual: 1e-3,
            ..FlowConfig::default()
        };
        let report = evolve(st, &np, &cfg).unwrap();
        assert!(report.converged);
        assert_eq!(report.state.step_count(), 0);
        assert_eq!(report.history.len(), 1);
    }

    #[test]
    fn evolve_converges_from_inflated_shape() {
        let np = NonlocalParams::new(0.2, 0.1).unwrap();
        let shape = solve_steady(&np, 512).unwrap();
        let start = FlowState::from_shape(&shape, 128).unwrap().scaled(1.1).unwrap();
        let cfg = FlowConfig {
            stop_residual: 1e-3,
            max_steps: 60_000,
            ..FlowConfig::default()
        };
        let report = evolve(start, &np, &cfg).unwrap();
        assert!(report.converged, "stop={:?}", report.stop);
        let d = crate::geom::hausdorff(report.state.markers(), &shape.points_xy());
        assert!(d < 1e-2 * report.state.diameter(), "hausdorff {d}");
    }

    #[test]
    fn ellipse_with_forced_constants_is_not_steady() {
        let e = crate::ellipse::EllipseSpec::new(2.0, 1.0).unwrap();
        let np = NonlocalParams::new(
            crate::ellipse::forced_c1(&e),
            crate::ellipse::forced_c2(&e),
        )
        .unwrap();
        let st = FlowState::ellipse(2.0, 1.0, 512).unwrap();
        let res = residual(&st, &np).unwrap();
        assert!(res.max_abs > 0.1, "max residual {}", res.max_abs);
        // the residual at the phi = pi/4 marker matches the analytic value
        let k = 512 / 8;
        assert!(
            (res.per_marker[k] - (-0.1936)).abs() < 2e-3,
            "r(pi/4) = {}",
            res.per_marker[k]
        );
    }
}
