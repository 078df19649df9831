//! Quantile-based reliability functions of a bivariate model.
//!
//! The first component of every vector is built from the marginal quantile
//! `Q_X` at level `u`; the second from `phi`, the quantile function of `Y`
//! given `X <= Q_X(u)`, at level `p_x`. Both arguments are kept explicit:
//! `phi` depends on the level `u` at which it is anchored.
//!
//! | kind | first | second |
//! |------|-------|--------|
//! | hazard | `1 / ((1-u) Q_X'(u))` | `1 / ((1-p) phi'(p))` |
//! | mean residual life | `(1/(1-u)) int_u^1 Q_X - Q_X(u)` | same with `phi` |
//! | reversed hazard | `1 / (u Q_X'(u))` | `1 / (p phi'(p))` |
//! | reversed mean residual life | `Q_X(u) - (1/u) int_0^u Q_X` | same with `phi` |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::models::{BivariateModel, MarginalFamily, Sense};
use crate::numerics::{quadrature, Endpoint, NumericConfig};

/// Which of the four reliability functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReliabilityKind {
    Hazard,
    Mrl,
    RevHazard,
    RevMrl,
}

impl ReliabilityKind {
    pub const ALL: [ReliabilityKind; 4] = [
        ReliabilityKind::Hazard,
        ReliabilityKind::Mrl,
        ReliabilityKind::RevHazard,
        ReliabilityKind::RevMrl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReliabilityKind::Hazard => "hazard",
            ReliabilityKind::Mrl => "mrl",
            ReliabilityKind::RevHazard => "rev-hazard",
            ReliabilityKind::RevMrl => "rev-mrl",
        }
    }
}

impl fmt::Display for ReliabilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReliabilityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "kind must be one of hazard, mrl, rev-hazard, rev-mrl, got {s:?}"
                ))
            })
    }
}

/// A two-component reliability value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityVector {
    pub kind: ReliabilityKind,
    /// Function of `Q_X` at `u`.
    pub first: f64,
    /// Function of `phi` at `p_cond`.
    pub second: f64,
    pub u: f64,
    pub p_cond: f64,
    /// Level at which `phi` is anchored (equal to `u`).
    pub conditioning_u: f64,
}

/// One quantile-type component of a model: `Q_X`, or `phi` anchored at a
/// conditioning level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComponentQuantile {
    Marginal(MarginalFamily),
    Conditional {
        model: BivariateModel,
        conditioning_u: f64,
    },
}

impl ComponentQuantile {
    /// `Q_X` of the model.
    pub fn first(model: &BivariateModel) -> Self {
        ComponentQuantile::Marginal(model.marginal_x)
    }

    /// `phi`: quantile function of `Y` given `X <= Q_X(conditioning_u)`.
    pub fn second(model: &BivariateModel, conditioning_u: f64) -> Result<Self> {
        check_probability("conditioning_u", conditioning_u)?;
        if conditioning_u == 0.0 {
            return Err(Error::DegenerateConditioning {
                event: "X <= Q_X(u)",
                u: conditioning_u,
            });
        }
        Ok(ComponentQuantile::Conditional {
            model: *model,
            conditioning_u,
        })
    }

    fn describe(&self) -> String {
        match self {
            ComponentQuantile::Marginal(m) => format!("marginal {m:?}"),
            ComponentQuantile::Conditional { model, .. } => {
                format!(
                    "conditional quantile of Y with marginal {:?}",
                    model.marginal_y
                )
            }
        }
    }

    /// Quantile at an interior (clipped) level.
    pub fn value(&self, t: f64, cfg: &NumericConfig) -> Result<f64> {
        match self {
            ComponentQuantile::Marginal(m) => Ok(m.quantile(cfg.clip(t))),
            ComponentQuantile::Conditional {
                model,
                conditioning_u,
            } => model.conditional_quantile(Sense::GivenLe, *conditioning_u, t, cfg),
        }
    }

    /// Analytic derivative at an interior (clipped) level.
    pub fn derivative(&self, t: f64, cfg: &NumericConfig) -> Result<f64> {
        match self {
            ComponentQuantile::Marginal(m) => Ok(m.quantile_derivative(cfg.clip(t))),
            ComponentQuantile::Conditional {
                model,
                conditioning_u,
            } => model.conditional_quantile_derivative(Sense::GivenLe, *conditioning_u, t, cfg),
        }
    }

    /// Infimum of the support, `Q(0)`.
    pub fn lower_support(&self) -> f64 {
        match self {
            ComponentQuantile::Marginal(m) => m.support().0,
            ComponentQuantile::Conditional { model, .. } => model.marginal_y.support().0,
        }
    }

    /// Fails with [`Error::InfiniteMean`] when the mean is infinite.
    fn require_finite_mean(&self) -> Result<()> {
        let finite = match self {
            ComponentQuantile::Marginal(m) => m.mean().is_some(),
            // The conditional density is at most 1 + |theta| times the marginal one.
            ComponentQuantile::Conditional { model, .. } => model.marginal_y.mean().is_some(),
        };
        if finite {
            Ok(())
        } else {
            Err(Error::InfiniteMean(self.describe()))
        }
    }

    /// `int_0^1 Q`, closed form for marginals.
    pub fn mean(&self, cfg: &NumericConfig) -> Result<f64> {
        self.require_finite_mean()?;
        match self {
            ComponentQuantile::Marginal(m) => Ok(m.mean().expect("checked above")),
            ComponentQuantile::Conditional { .. } => quadrature(
                |z| self.value(z, cfg),
                0.0,
                1.0,
                Endpoint::Singular,
                Endpoint::Singular,
                cfg,
            )?
            .corrected(),
        }
    }
}

/// Validates a probability argument of a reliability function: in `[0,1]`
/// and not at either end.
fn interior(name: &str, t: f64) -> Result<()> {
    check_probability(name, t)?;
    if t == 0.0 || t == 1.0 {
        return Err(Error::Boundary {
            what: format!("{name} at the edge of the unit interval"),
            endpoint: t,
        });
    }
    Ok(())
}

fn positive_derivative(q: &ComponentQuantile, t: f64, cfg: &NumericConfig) -> Result<f64> {
    let d = q.derivative(t, cfg)?;
    if d > 0.0 && d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Monotonicity {
            at: t,
            derivative: d,
        })
    }
}

/// `h(t) = 1 / ((1 - t) Q'(t))`.
pub fn hazard_at(q: &ComponentQuantile, t: f64, cfg: &NumericConfig) -> Result<f64> {
    interior("t", t)?;
    let t = cfg.clip(t);
    Ok(1.0 / ((1.0 - t) * positive_derivative(q, t, cfg)?))
}

/// `r(t) = 1 / (t Q'(t))`.
pub fn reversed_hazard_at(q: &ComponentQuantile, t: f64, cfg: &NumericConfig) -> Result<f64> {
    interior("t", t)?;
    let t = cfg.clip(t);
    Ok(1.0 / (t * positive_derivative(q, t, cfg)?))
}

/// `m(t) = (1/(1-t)) int_t^1 Q - Q(t)`, evaluated as the mean of
/// `Q(z) - Q(t)` over `(t, 1)`.
pub fn mrl_at(q: &ComponentQuantile, t: f64, cfg: &NumericConfig) -> Result<f64> {
    interior("t", t)?;
    q.require_finite_mean()?;
    let t = cfg.clip(t);
    let qt = q.value(t, cfg)?;
    let excess = quadrature(
        |z| Ok(q.value(z, cfg)? - qt),
        t,
        1.0,
        Endpoint::Regular,
        Endpoint::Singular,
        cfg,
    )?
    .corrected()?;
    Ok(excess / (1.0 - t))
}

/// `eta(t) = Q(t) - (1/t) int_0^t Q`, evaluated as the mean of
/// `Q(t) - Q(z)` over `(0, t)`.
pub fn reversed_mrl_at(q: &ComponentQuantile, t: f64, cfg: &NumericConfig) -> Result<f64> {
    interior("t", t)?;
    let t = cfg.clip(t);
    let qt = q.value(t, cfg)?;
    let deficit = quadrature(
        |z| Ok(qt - q.value(z, cfg)?),
        0.0,
        t,
        Endpoint::Singular,
        Endpoint::Regular,
        cfg,
    )?
    .corrected()?;
    Ok(deficit / t)
}

/// Single-component evaluation of any kind.
pub fn component_value(
    q: &ComponentQuantile,
    kind: ReliabilityKind,
    t: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    match kind {
        ReliabilityKind::Hazard => hazard_at(q, t, cfg),
        ReliabilityKind::Mrl => mrl_at(q, t, cfg),
        ReliabilityKind::RevHazard => reversed_hazard_at(q, t, cfg),
        ReliabilityKind::RevMrl => reversed_mrl_at(q, t, cfg),
    }
}

/// Both components of `kind` at `(u, p_x)`, with `phi` anchored at `u`.
pub fn reliability_vector(
    model: &BivariateModel,
    kind: ReliabilityKind,
    u: f64,
    p_x: f64,
    cfg: &NumericConfig,
) -> Result<ReliabilityVector> {
    interior("u", u)?;
    interior("p_x", p_x)?;
    let first = component_value(&ComponentQuantile::first(model), kind, u, cfg)?;
    let second = component_value(&ComponentQuantile::second(model, u)?, kind, p_x, cfg)?;
    Ok(ReliabilityVector {
        kind,
        first,
        second,
        u,
        p_cond: p_x,
        conditioning_u: u,
    })
}

pub fn hazard_vector(
    model: &BivariateModel,
    u: f64,
    p_x: f64,
    cfg: &NumericConfig,
) -> Result<ReliabilityVector> {
    reliability_vector(model, ReliabilityKind::Hazard, u, p_x, cfg)
}

pub fn mrl_vector(
    model: &BivariateModel,
    u: f64,
    p_x: f64,
    cfg: &NumericConfig,
) -> Result<ReliabilityVector> {
    reliability_vector(model, ReliabilityKind::Mrl, u, p_x, cfg)
}

pub fn reversed_hazard_vector(
    model: &BivariateModel,
    u: f64,
    p_x: f64,
    cfg: &NumericConfig,
) -> Result<ReliabilityVector> {
    reliability_vector(model, ReliabilityKind::RevHazard, u, p_x, cfg)
}

pub fn reversed_mrl_vector(
    model: &BivariateModel,
    u: f64,
    p_x: f64,
    cfg: &NumericConfig,
) -> Result<ReliabilityVector> {
    reliability_vector(model, ReliabilityKind::RevMrl, u, p_x, cfg)
}

/// The vector with the roles of `X` and `Y` exchanged: built from `Q_Y` at
/// `v` and from the quantile function of `X` given `Y <= Q_Y(v)` at `p_y`.
pub fn interchanged(
    model: &BivariateModel,
    kind: ReliabilityKind,
    v: f64,
    p_y: f64,
    cfg: &NumericConfig,
) -> Result<ReliabilityVector> {
    reliability_vector(&model.swap_axes(), kind, v, p_y, cfg)
}

/// `i / (n + 1)` for `i = 1..=n`.
pub fn interior_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}
