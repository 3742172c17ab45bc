//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enum.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input that must be finite was NaN or infinite.
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A bad argument that is not a domain issue (sample counts, tolerances, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Adaptive refinement ran out of budget; carries the best estimate so far.
    #[error("requested accuracy {requested:e} not reached (best estimate {estimate}, error ~{achieved:e})")]
    Accuracy {
        estimate: f64,
        requested: f64,
        achieved: f64,
    },

    /// The curvature profile never vanishes (q = 0 keeps it constant).
    #[error("curvature profile has no zero for q = 0")]
    NoZero,

    /// No critical abrasion scale exists at q = 0 (every value yields a circle).
    #[error("no critical value at q = 0")]
    NoCritical,

    /// The local parameters admit no bounded smooth realization.
    #[error("not realizable: c1_hat = {c1_hat} exceeds critical value {c1_crit} at this q")]
    NotRealizable { c1_hat: f64, c1_crit: f64 },

    /// Exactly the critical value: the limit curve is unbounded.
    #[error("degenerate limit: c1_hat = {c1_hat} equals the critical value; the curve is unbounded")]
    DegenerateLimit { c1_hat: f64 },

    /// A root bracket could not be established or maintained.
    #[error("root bracketing failed on [{lo}, {hi}]: {what}")]
    Bracket { what: &'static str, lo: f64, hi: f64 },

    /// A quantity that must be monotone failed strict monotonicity; signals a numerics bug.
    #[error("monotonicity violated at row {index}: {what}")]
    MonotonicityViolation { what: &'static str, index: usize },

    /// A sampled curve is internally inconsistent (e.g. nonpositive interior curvature).
    #[error("inconsistent curve data: {0}")]
    Inconsistency(String),

    /// Degenerate marker data (duplicate or coincident points).
    #[error("degenerate markers at index {index}")]
    Degenerate { index: usize },

    /// The evolving polyline self-intersected.
    #[error("flow topology failure at step {step}: polyline self-intersects")]
    Topology { step: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
