//! Level-`p` quantile curves in the four orthant directions.
//!
//! A curve is parametrized by the marginal level `u` of `X`: the point is
//! `(Q_X(u), y)` with `y` a conditional quantile of `Y`,
//!
//! | direction | conditioning | level of `Y` | domain |
//! |-----------|--------------|--------------|--------|
//! | `--` | `X <= Q_X(u)` | `p / u` | `u > p` |
//! | `+-` | `X >= Q_X(u)` | `p / (1 - u)` | `u < 1 - p` |
//! | `-+` | `X <= Q_X(u)` | `1 - p / u` | `u > p` |
//! | `++` | `X >= Q_X(u)` | `1 - p / (1 - u)` | `u < 1 - p` |

use serde::{Deserialize, Serialize};

use crate::error::{check_open_probability, check_probability, Error, Result};
use crate::models::{Axis, BivariateModel, Direction, Sign};
use crate::numerics::NumericConfig;

/// Distance kept from the ends of the admissible `u`-domain.
pub const GRID_MARGIN: f64 = 1e-4;

/// Largest accepted `|F_eps(x, y) - p|` for an emitted point.
pub const CURVE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub u: f64,
    pub x: f64,
    pub y: f64,
}

/// Points of one curve, ordered by strictly increasing `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileCurve {
    pub p: f64,
    pub dir: Direction,
    pub points: Vec<CurvePoint>,
}

/// Open admissible domain of `u` for level `p` and direction `dir`.
pub fn admissible_domain(p: f64, dir: Direction) -> (f64, f64) {
    match dir.x {
        Sign::Minus => (p, 1.0),
        Sign::Plus => (0.0, 1.0 - p),
    }
}

/// Probability level of `Y` under the conditioning event at `u`.
pub fn conditional_level(p: f64, dir: Direction, u: f64) -> f64 {
    let base = match dir.x {
        Sign::Minus => p / u,
        Sign::Plus => p / (1.0 - u),
    };
    match dir.y {
        Sign::Minus => base,
        Sign::Plus => 1.0 - base,
    }
}

pub(crate) fn check_admissible(p: f64, dir: Direction, u: f64) -> Result<()> {
    check_probability("u", u)?;
    let ok = match dir.x {
        Sign::Minus => u > p,
        Sign::Plus => u < 1.0 - p,
    };
    if ok {
        return Ok(());
    }
    let constraint = match dir.x {
        Sign::Minus => "u > p",
        Sign::Plus => "u < 1 - p",
    };
    Err(Error::Domain(format!(
        "direction {dir} requires {constraint}, got u = {u}, p = {p}"
    )))
}

/// The single curve point at parameter `u`.
pub fn curve_from_conditional(
    model: &BivariateModel,
    p: f64,
    dir: Direction,
    u: f64,
    cfg: &NumericConfig,
) -> Result<(f64, f64)> {
    check_open_probability("p", p)?;
    check_admissible(p, dir, u)?;
    let x = model.marginal_quantile(Axis::X, u, cfg)?;
    let level = conditional_level(p, dir, u).clamp(0.0, 1.0);
    let y = model.conditional_quantile(dir.sense(), u, level, cfg)?;
    Ok((x, y))
}

/// `|F_eps(x, y) - p|`.
pub fn orthant_residual(model: &BivariateModel, p: f64, dir: Direction, x: f64, y: f64) -> f64 {
    (model.orthant_prob(dir, x, y) - p).abs()
}

/// Uniform grid of `n_points` over the admissible domain shrunk by
/// [`GRID_MARGIN`] at both ends.
pub fn curve_grid(p: f64, dir: Direction, n_points: usize) -> Result<Vec<f64>> {
    check_open_probability("p", p)?;
    if n_points < 2 {
        return Err(Error::Domain(format!(
            "a curve needs at least 2 points, got {n_points}"
        )));
    }
    let (lo, hi) = admissible_domain(p, dir);
    let (a, b) = (lo + GRID_MARGIN, hi - GRID_MARGIN);
    if !(a < b) {
        return Err(Error::DegenerateLevel {
            p,
            dir: dir.to_string(),
        });
    }
    let step = (b - a) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            if i + 1 == n_points {
                b
            } else {
                a + i as f64 * step
            }
        })
        .collect())
}

/// Curve points at the given parameters; every point is checked against
/// the level-set tolerance.
pub fn curve_on_grid(
    model: &BivariateModel,
    p: f64,
    dir: Direction,
    grid: &[f64],
    cfg: &NumericConfig,
) -> Result<QuantileCurve> {
    let mut points = Vec::with_capacity(grid.len());
    for &u in grid {
        let (x, y) = curve_from_conditional(model, p, dir, u, cfg)?;
        let residual = orthant_residual(model, p, dir, x, y);
        if !(residual <= CURVE_TOL) {
            return Err(Error::LevelSet { u, residual });
        }
        points.push(CurvePoint { u, x, y });
    }
    Ok(QuantileCurve { p, dir, points })
}

/// The level-`p` curve in direction `dir` on an `n_points` uniform grid.
pub fn curve_points(
    model: &BivariateModel,
    p: f64,
    dir: Direction,
    n_points: usize,
    cfg: &NumericConfig,
) -> Result<QuantileCurve> {
    let grid = curve_grid(p, dir, n_points)?;
    curve_on_grid(model, p, dir, &grid, cfg)
}
