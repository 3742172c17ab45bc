//! Steady shapes of a nonlocal curvature flow with growth, abrasion and
//! friction.
//!
//! A closed convex curve evolves along its inward unit normal with speed
//!
//! ```text
//! v = c3 * (-1 + c1 A kappa + c2 A y cos(gamma)),
//! ```
//!
//! where `A` is the enclosed area (the nonlocal coupling), `kappa` the
//! curvature, `y` the height over the long axis and `gamma` the tangent
//! inclination. The constant term feeds growth, the curvature term abrades,
//! and the affine term models friction. Steady shapes zero the bracket
//! everywhere; they are convex, symmetric under reflection across both axes,
//! and uniquely determined by `(c1, c2)` (`c3` only scales time).
//!
//! Module map:
//! - [`specfun`]: the Dawson function kernel behind the closed-form solution
//!   family, plus an adaptive quadrature used as an independent cross-check.
//! - [`local`]: the local problem (area absorbed into `c1_hat = c1 A`,
//!   `c2_hat = c2 A`): curvature and tangent-angle profiles, critical
//!   coefficient, realization of the quarter arc and assembly of the closed
//!   shape.
//! - [`nonlocal`]: the strictly decreasing map `c1_hat -> c1` at fixed
//!   `q = sqrt(c2 / (2 c1))`, its bracketed inverse, the steady-state solver
//!   and monotonicity sweeps.
//! - [`flow`]: a marker-particle simulator of the full evolution law.
//! - [`ellipse`]: an executable demonstration that ellipses are never steady.
//! - [`inverse`]: least-squares recovery of `(c1, c2)` from an observed
//!   shape.

pub mod ellipse;
pub mod error;
pub mod flow;
pub mod geom;
pub mod inverse;
pub mod local;
pub mod nonlocal;
mod roots;
pub mod specfun;

pub use ellipse::EllipseSpec;
pub use error::{Error, Result};
pub use flow::{EvolveReport, FlowConfig, FlowState, HistoryRow, StopReason};
pub use geom::{MarkerGeometry, Point};
pub use inverse::Recovery;
pub use local::{
    CurveSegment, CurvatureProfile, LocalParams, SegmentSample, ShapePoint, SteadyShape,
};
pub use nonlocal::{MapSweep, NonlocalParams, SweepRow};
