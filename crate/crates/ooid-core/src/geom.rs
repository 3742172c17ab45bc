//! Plane polyline helpers shared by the flow simulator and the estimators.
//!
//! Closed polylines are vertex lists without a repeated endpoint; orientation
//! is counterclockwise when the signed shoelace area is positive.

use crate::error::{Error, Result};

/// A point in the plane.
pub type Point = [f64; 2];

/// Per-marker differential geometry estimated from a closed polyline.
///
/// `gamma` is the angle between the tangent *line* and the x axis, folded to
/// `[0, pi/2]`, and `y` is the absolute height, so that the friction term
/// `y * cos(gamma)` of the steadiness residual is mirror symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkerGeometry {
    /// Signed curvature from the circumscribed circle of the marker triple;
    /// positive on convex counterclockwise arcs, zero for collinear triples.
    pub kappa: f64,
    /// Folded tangent inclination in `[0, pi/2]`.
    pub gamma: f64,
    /// Absolute height of the marker.
    pub y: f64,
    /// Inward unit normal (for a counterclockwise polyline).
    pub normal: Point,
}

/// Signed shoelace area; positive for counterclockwise orientation.
pub fn shoelace_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut twice = 0.0;
    for i in 0..n {
        let [x0, y0] = pts[i];
        let [x1, y1] = pts[(i + 1) % n];
        twice += x0 * y1 - x1 * y0;
    }
    0.5 * twice
}

pub fn perimeter(pts: &[Point]) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| dist(pts[i], pts[(i + 1) % n]))
        .sum()
}

pub fn bbox_diagonal(pts: &[Point]) -> f64 {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in pts {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    dist(min, max)
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Cross products of consecutive edges all share one sign (within `tol`,
/// which has units of length squared).
pub fn is_convex(pts: &[Point], tol: f64) -> bool {
    let n = pts.len();
    let mut pos = false;
    let mut neg = false;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let c = pts[(i + 2) % n];
        let x = cross([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]);
        if x > tol {
            pos = true;
        } else if x < -tol {
            neg = true;
        }
        if pos && neg {
            return false;
        }
    }
    true
}

/// Total turning of the closed polyline in radians (2*pi for a simple
/// counterclockwise curve).
pub fn total_turning(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let c = pts[(i + 2) % n];
        let e1 = [b[0] - a[0], b[1] - a[1]];
        let e2 = [c[0] - b[0], c[1] - b[1]];
        sum += cross(e1, e2).atan2(e1[0] * e2[0] + e1[1] * e2[1]);
    }
    sum
}

/// Whether the closed polyline is free of self-intersections.
///
/// A locally convex polyline with total turning 2*pi is simple, which covers
/// every healthy state cheaply; anything else falls back to the quadratic
/// segment-pair test.
pub fn is_simple(pts: &[Point]) -> bool {
    let n = pts.len();
    if n < 3 {
        return false;
    }
    let diag = bbox_diagonal(pts);
    if is_convex(pts, 1e-12 * diag * diag)
        && (total_turning(pts) - std::f64::consts::TAU).abs() < 1e-6
    {
        return true;
    }
    for i in 0..n {
        let a1 = pts[i];
        let a2 = pts[(i + 1) % n];
        for j in i + 1..n {
            // skip segments sharing an endpoint
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let b1 = pts[j];
            let b2 = pts[(j + 1) % n];
            if segments_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

fn segments_intersect(p1: Point, p2: Point, p3: Point, p4: Point) -> bool {
    let d1 = cross([p4[0] - p3[0], p4[1] - p3[1]], [p1[0] - p3[0], p1[1] - p3[1]]);
    let d2 = cross([p4[0] - p3[0], p4[1] - p3[1]], [p2[0] - p3[0], p2[1] - p3[1]]);
    let d3 = cross([p2[0] - p1[0], p2[1] - p1[1]], [p3[0] - p1[0], p3[1] - p1[1]]);
    let d4 = cross([p2[0] - p1[0], p2[1] - p1[1]], [p4[0] - p1[0], p4[1] - p1[1]]);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Per-marker curvature, folded tangent angle, height and inward normal.
///
/// Curvature comes from the circumscribed circle of each consecutive marker
/// triple (robust to mildly non-uniform spacing, exact on circles); the
/// tangent is the chord through the two neighbors.
pub fn marker_geometry(pts: &[Point]) -> Result<Vec<MarkerGeometry>> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let p = pts[(i + n - 1) % n];
        let c = pts[i];
        let q = pts[(i + 1) % n];
        let e1 = [c[0] - p[0], c[1] - p[1]];
        let e2 = [q[0] - c[0], q[1] - c[1]];
        let l1 = e1[0].hypot(e1[1]);
        let l2 = e2[0].hypot(e2[1]);
        let chord = [q[0] - p[0], q[1] - p[1]];
        let l3 = chord[0].hypot(chord[1]);
        if l1 == 0.0 || l2 == 0.0 || l3 == 0.0 {
            return Err(Error::Degenerate { index: i });
        }
        let kappa = 2.0 * cross(e1, e2) / (l1 * l2 * l3);
        let t = [chord[0] / l3, chord[1] / l3];
        let gamma = t[0].abs().min(1.0).acos();
        out.push(MarkerGeometry {
            kappa,
            gamma,
            y: c[1].abs(),
            normal: [-t[1], t[0]],
        });
    }
    Ok(out)
}

/// Resample a closed polyline to `n` points uniformly spaced in arclength,
/// interpolating with a periodic Catmull-Rom cubic. The first input point is
/// preserved as the first output point.
pub fn resample_closed(pts: &[Point], n: usize) -> Vec<Point> {
    let m = pts.len();
    let mut cum = Vec::with_capacity(m + 1);
    cum.push(0.0);
    for i in 0..m {
        let d = dist(pts[i], pts[(i + 1) % m]);
        cum.push(cum[i] + d);
    }
    let total = cum[m];
    let mut out = Vec::with_capacity(n);
    let mut seg = 0usize;
    for j in 0..n {
        let target = total * j as f64 / n as f64;
        while seg + 1 < m && cum[seg + 1] <= target {
            seg += 1;
        }
        let len = cum[seg + 1] - cum[seg];
        let u = if len > 0.0 { (target - cum[seg]) / len } else { 0.0 };
        out.push(catmull_rom(
            pts[(seg + m - 1) % m],
            pts[seg],
            pts[(seg + 1) % m],
            pts[(seg + 2) % m],
            u,
        ));
    }
    out
}

fn catmull_rom(p0: Point, p1: Point, p2: Point, p3: Point, u: f64) -> Point {
    let u2 = u * u;
    let u3 = u2 * u;
    let mut out = [0.0; 2];
    for k in 0..2 {
        out[k] = 0.5
            * (2.0 * p1[k]
                + (p2[k] - p0[k]) * u
                + (2.0 * p0[k] - 5.0 * p1[k] + 4.0 * p2[k] - p3[k]) * u2
                + (3.0 * p1[k] - p0[k] - 3.0 * p2[k] + p3[k]) * u3);
    }
    out
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

/// Symmetric Hausdorff distance between two closed polylines
/// (points of one against the segments of the other, both ways).
pub fn hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let one_way = |from: &[Point], to: &[Point]| -> f64 {
        let n = to.len();
        from.iter()
            .map(|&p| {
                (0..n)
                    .map(|i| point_segment_distance(p, to[i], to[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
