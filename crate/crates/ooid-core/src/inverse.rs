//! Recover the physical parameters from an observed steady shape.
//!
//! The steadiness identity `-1 + c1 A kappa + c2 A y cos(gamma) = 0` is
//! linear in `(c1, c2)` once the geometry is estimated, so a least-squares
//! fit over all sampled points recovers both coefficients; `c3` is
//! unobservable (it only scales time).

use crate::error::{Error, Result};
use crate::geom::{bbox_diagonal, is_convex, marker_geometry, shoelace_area, MarkerGeometry, Point};

/// Estimated per-point geometry of an observed closed polyline.
#[derive(Debug, Clone)]
pub struct GeometryEstimate {
    pub per_point: Vec<MarkerGeometry>,
    /// Shoelace area (positive).
    pub area: f64,
    /// Cross products of consecutive edges share one sign.
    pub convex: bool,
    /// Every estimated curvature is strictly positive (flat runs and corner
    /// spikes of non-smooth inputs clear this flag).
    pub strictly_convex: bool,
}

/// Estimate per-point curvature, folded tangent angle and height, plus the
/// enclosed area, from a closed polyline of at least 32 points.
pub fn estimate_geometry(points: &[Point]) -> Result<GeometryEstimate> {
    if points.len() < 32 {
        return Err(Error::InvalidArgument(format!(
            "need at least 32 points, got {}",
            points.len()
        )));
    }
    let mut pts = points.to_vec();
    let mut area = shoelace_area(&pts);
    if area < 0.0 {
        pts.reverse();
        area = -area;
    }
    if area == 0.0 {
        return Err(Error::Inconsistency("polyline encloses no area".into()));
    }
    let per_point = marker_geometry(&pts)?;
    let diag = bbox_diagonal(&pts);
    let convex = is_convex(&pts, 1e-12 * diag * diag);
    let kappa_scale = per_point.iter().fold(0.0f64, |m, g| m.max(g.kappa.abs()));
    let strictly_convex = per_point.iter().all(|g| g.kappa > 1e-9 * kappa_scale);
    Ok(GeometryEstimate {
        per_point,
        area,
        convex,
        strictly_convex,
    })
}

/// Outcome of a parameter recovery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recovery {
    pub c1: f64,
    pub c2: f64,
    /// Root-mean-square of the steadiness residual at the fitted parameters.
    pub residual_rms: f64,
    /// The unconstrained optimum had `c2 < 0` and was clamped to the model
    /// range `c2 >= 0`.
    pub clamped: bool,
    /// The normal matrix was near singular; `c1` comes from the circle law
    /// and `c2` is zero.
    pub degenerate: bool,
    /// The input was not convex or not strictly convex; the fit proceeds but
    /// its quality is degraded.
    pub quality_warning: bool,
}

/// Least-squares fit of `(c1, c2)` over all points of an observed shape.
pub fn recover(points: &[Point]) -> Result<Recovery> {
    let est = estimate_geometry(points)?;
    let a = est.area;
    let n = est.per_point.len() as f64;

    let mut suu = 0.0;
    let mut suv = 0.0;
    let mut svv = 0.0;
    let mut su = 0.0;
    let mut sv = 0.0;
    for g in &est.per_point {
        let u = a * g.kappa;
        let v = a * g.y * g.gamma.cos();
        suu += u * u;
        suv += u * v;
        svv += v * v;
        su += u;
        sv += v;
    }

    let det = suu * svv - suv * suv;
    let degenerate =
        det.partial_cmp(&(1e-12 * suu * svv)) != Some(std::cmp::Ordering::Greater) || svv == 0.0;
    let mut clamped = false;
    let (c1, c2) = if degenerate {
        // circle law: constant kappa makes the system rank one
        (su / suu, 0.0)
    } else {
        let c1 = (svv * su - suv * sv) / det;
        let c2 = (suu * sv - suv * su) / det;
        if c2 < 0.0 {
            clamped = true;
            (su / suu, 0.0)
        } else {
            (c1, c2)
        }
    };

    let ss: f64 = est
        .per_point
        .iter()
        .map(|g| {
            let r = -1.0 + c1 * a * g.kappa + c2 * a * g.y * g.gamma.cos();
            r * r
        })
        .sum();
    Ok(Recovery {
        c1,
        c2,
        residual_rms: (ss / n).sqrt(),
        clamped,
        degenerate,
        quality_warning: !est.convex || !est.strictly_convex,
    })
}
