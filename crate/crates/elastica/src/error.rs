use thiserror::Error;

/// Errors surfaced by the elliptic kernel and the curve layers above it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Complete integral of the first kind requested at its pole p = 1.
    #[error("complete elliptic integral pole at parameter 1 (p = {p})")]
    PoleAtOne { p: f64 },

    /// Input outside the documented domain of an operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// Cubic roots too close to construct a two-period lattice.
    #[error("degenerate cubic roots: e1 - e3 = {spread} below tolerance")]
    DegenerateRoots { spread: f64 },

    /// Argument of ℘ or ζ within the pole tolerance of a lattice point.
    #[error("argument within {dist:e} of a lattice point")]
    PoleError { dist: f64 },

    /// Inverse-℘ target outside the range of ℘ on the requested strip.
    #[error("no preimage of {w} on the requested half-period strip [{lo}, {hi}]")]
    NoSolutionInStrip { w: f64, lo: f64, hi: f64 },

    /// Chart boundary discriminant negative: no real q₀ interval.
    #[error("no real chart boundary: discriminant {discriminant} < 0")]
    NoRealBoundary { discriminant: f64 },

    /// q₀ differs from the vertical-closure value Q₀(m).
    #[error("closure violated: q0 = {q0} but Q0(m) = {q0_closed} (|diff| = {gap:e})")]
    ClosureViolated { q0: f64, q0_closed: f64, gap: f64 },

    /// Cylindrical frame undefined because the binormal aligns with the axis.
    #[error("cylindrical frame degenerate: 1 - gamma^2 = {residual:e}")]
    FrameDegenerate { residual: f64 },

    /// Requested target outside the attainable range of the scanned quantity.
    #[error("target {target} outside attainable range [{lo}, {hi}]")]
    TargetOutOfRange { target: f64, lo: f64, hi: f64 },

    /// Closure solved but 2q/p is not an integer: curve does not close.
    #[error("aperiodic solution: l = 2q/p = {ell} is not an integer")]
    NonPeriodic { ell: f64 },

    /// Complex-logarithm continuity lost between adjacent samples.
    #[error("log branch jump of {jump} rad between adjacent samples")]
    BranchError { jump: f64 },

    /// Reconstructed curve endpoint misses its start.
    #[error("curve endpoint misses its start by {gap:e} (allowed {tol:e})")]
    OpenCurve { gap: f64, tol: f64 },

    /// Quantity diverges at the requested parameter.
    #[error("{what} is unbounded at {at}")]
    Unbounded { what: &'static str, at: f64 },
}

impl Error {
    /// Shorthand for a formatted domain error.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::DomainError(msg.into())
    }
}
