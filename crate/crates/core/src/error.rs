use thiserror::Error;

/// Errors raised by model evaluation, numerics, and the derived quantities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("boundary error: {what} at endpoint {endpoint} (quantile is unbounded there)")]
    Boundary { what: String, endpoint: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid numeric configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate conditioning: cannot condition on {event} with u = {u}")]
    DegenerateConditioning { event: &'static str, u: f64 },

    #[error(
        "inversion failure: no bracket found within support expansion, last bracket [{lo}, {hi}]"
    )]
    InversionFailure { lo: f64, hi: f64 },

    #[error("invalid bracket [{lo}, {hi}]: g(lo) = {g_lo}, g(hi) = {g_hi}, target = {target}")]
    Bracket {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
        target: f64,
    },

    #[error("bisection did not converge after {iterations} iterations (best iterate {best}, residual {residual:e})")]
    Convergence {
        best: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("integrand is not finite at z = {at} (value {value})")]
    Integrand { at: f64, value: f64 },

    #[error(
        "integral diverges at the {endpoint} endpoint: integrand does not decay inside the clip"
    )]
    Divergent { endpoint: &'static str },

    #[error("infinite mean: {0} has no finite mean, mean residual life is undefined")]
    InfiniteMean(String),

    #[error("monotonicity violation: quantile derivative {derivative} at {at} is not positive")]
    Monotonicity { at: f64, derivative: f64 },

    #[error("sign error: {what} must be positive, got {value} at {at}")]
    Sign {
        what: &'static str,
        at: f64,
        value: f64,
    },

    #[error("missing mean: no mean hint and the function is not evaluable near 0")]
    MissingMean,

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("degenerate level: admissible u-domain for p = {p}, direction {dir} is empty after clipping")]
    DegenerateLevel { p: f64, dir: String },

    #[error("curve point at u = {u} misses the level set by {residual:e}")]
    LevelSet { u: f64, residual: f64 },

    #[error("insufficient mass at u = {u}: {count} points available, {needed} required")]
    InsufficientMass { u: f64, count: usize, needed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in [0,1], got {p}")))
    }
}

pub(crate) fn check_open_probability(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in (0,1)")))
    }
}
