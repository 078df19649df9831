//! Bivariate models built from two marginal families and a copula.
//!
//! Conditional distributions of `Y` given `X <= Q_X(u)` or `X >= Q_X(u)`
//! reduce, for both built-in copulas, to the copula-scale form
//! `v + a v (1 - v)` with a slope `a` depending on the conditioning level,
//! which gives closed-form conditional quantiles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{check_open_probability, check_probability, Error, Result};
use crate::numerics::{invert_monotone, NumericConfig};

/// Univariate marginal distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MarginalRepr", into = "MarginalRepr")]
pub enum MarginalFamily {
    Uniform01,
    Exponential {
        rate: f64,
    },
    /// Survival `(scale / x)^shape` for `x >= scale`.
    Pareto {
        scale: f64,
        shape: f64,
    },
    /// Survival `exp(-(x / scale)^shape)`.
    Weibull {
        scale: f64,
        shape: f64,
    },
}

impl MarginalFamily {
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be strictly positive, got {v}"
                )))
            }
        };
        match *self {
            MarginalFamily::Uniform01 => Ok(()),
            MarginalFamily::Exponential { rate } => check("Exponential rate", rate),
            MarginalFamily::Pareto { scale, shape } => {
                check("Pareto scale", scale)?;
                check("Pareto shape", shape)
            }
            MarginalFamily::Weibull { scale, shape } => {
                check("Weibull scale", scale)?;
                check("Weibull shape", shape)
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            MarginalFamily::Uniform01 => x.clamp(0.0, 1.0),
            MarginalFamily::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            MarginalFamily::Pareto { scale, shape } => {
                if x <= scale {
                    0.0
                } else {
                    1.0 - (scale / x).powf(shape)
                }
            }
            MarginalFamily::Weibull { scale, shape } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-(x / scale).powf(shape)).exp_m1()
                }
            }
        }
    }

    /// Quantile for `u` in `[0, 1]`; `+inf` at `u = 1` for unbounded supports.
    pub fn quantile(&self, u: f64) -> f64 {
        match *self {
            MarginalFamily::Uniform01 => u,
            MarginalFamily::Exponential { rate } => -(-u).ln_1p() / rate,
            MarginalFamily::Pareto { scale, shape } => scale * (1.0 - u).powf(-1.0 / shape),
            MarginalFamily::Weibull { scale, shape } => scale * (-(-u).ln_1p()).powf(1.0 / shape),
        }
    }

    /// Analytic `Q'(u)`.
    pub fn quantile_derivative(&self, u: f64) -> f64 {
        match *self {
            MarginalFamily::Uniform01 => 1.0,
            MarginalFamily::Exponential { rate } => 1.0 / (rate * (1.0 - u)),
            MarginalFamily::Pareto { scale, shape } => {
                scale / shape * (1.0 - u).powf(-1.0 / shape - 1.0)
            }
            MarginalFamily::Weibull { scale, shape } => {
                let l = -(-u).ln_1p();
                scale / shape * l.powf(1.0 / shape - 1.0) / (1.0 - u)
            }
        }
    }

    /// Mean, or `None` when it is infinite (Pareto with shape <= 1).
    pub fn mean(&self) -> Option<f64> {
        match *self {
            MarginalFamily::Uniform01 => Some(0.5),
            MarginalFamily::Exponential { rate } => Some(1.0 / rate),
            MarginalFamily::Pareto { scale, shape } => {
                (shape > 1.0).then(|| shape * scale / (shape - 1.0))
            }
            MarginalFamily::Weibull { scale, shape } => Some(scale * gamma(1.0 + 1.0 / shape)),
        }
    }

    /// Closure of the support, `(inf, sup)`.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            MarginalFamily::Uniform01 => (0.0, 1.0),
            MarginalFamily::Pareto { scale, .. } => (scale, f64::INFINITY),
            MarginalFamily::Exponential { .. } | MarginalFamily::Weibull { .. } => {
                (0.0, f64::INFINITY)
            }
        }
    }
}

impl fmt::Display for MarginalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MarginalFamily::Uniform01 => write!(f, "Uniform01"),
            MarginalFamily::Exponential { rate } => write!(f, "Exponential(rate={rate})"),
            MarginalFamily::Pareto { scale, shape } => {
                write!(f, "Pareto(scale={scale}, shape={shape})")
            }
            MarginalFamily::Weibull { scale, shape } => {
                write!(f, "Weibull(scale={scale}, shape={shape})")
            }
        }
    }
}

/// Dependence structure on the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CopulaRepr", into = "CopulaRepr")]
pub enum CopulaFamily {
    Independence,
    /// Farlie-Gumbel-Morgenstern, `C(u,v) = uv(1 + theta (1-u)(1-v))`.
    Fgm {
        theta: f64,
    },
}

impl fmt::Display for CopulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CopulaFamily::Independence => write!(f, "Independence"),
            CopulaFamily::Fgm { theta } => write!(f, "FGM(theta={theta})"),
        }
    }
}

// Wire forms. Parameterless families are empty struct variants so that
// stray keys are rejected for them too.
#[derive(Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
enum MarginalRepr {
    Uniform01 {},
    Exponential { rate: f64 },
    Pareto { scale: f64, shape: f64 },
    Weibull { scale: f64, shape: f64 },
}

impl TryFrom<MarginalRepr> for MarginalFamily {
    type Error = Error;

    fn try_from(r: MarginalRepr) -> Result<Self> {
        let m = match r {
            MarginalRepr::Uniform01 {} => MarginalFamily::Uniform01,
            MarginalRepr::Exponential { rate } => MarginalFamily::Exponential { rate },
            MarginalRepr::Pareto { scale, shape } => MarginalFamily::Pareto { scale, shape },
            MarginalRepr::Weibull { scale, shape } => MarginalFamily::Weibull { scale, shape },
        };
        m.validate()?;
        Ok(m)
    }
}

impl From<MarginalFamily> for MarginalRepr {
    fn from(m: MarginalFamily) -> Self {
        match m {
            MarginalFamily::Uniform01 => MarginalRepr::Uniform01 {},
            MarginalFamily::Exponential { rate } => MarginalRepr::Exponential { rate },
            MarginalFamily::Pareto { scale, shape } => MarginalRepr::Pareto { scale, shape },
            MarginalFamily::Weibull { scale, shape } => MarginalRepr::Weibull { scale, shape },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
enum CopulaRepr {
    Independence {},
    #[serde(rename = "FGM")]
    Fgm {
        theta: f64,
    },
}

impl TryFrom<CopulaRepr> for CopulaFamily {
    type Error = Error;

    fn try_from(r: CopulaRepr) -> Result<Self> {
        let c = match r {
            CopulaRepr::Independence {} => CopulaFamily::Independence,
            CopulaRepr::Fgm { theta } => CopulaFamily::Fgm { theta },
        };
        c.validate()?;
        Ok(c)
    }
}

impl From<CopulaFamily> for CopulaRepr {
    fn from(c: CopulaFamily) -> Self {
        match c {
            CopulaFamily::Independence => CopulaRepr::Independence {},
            CopulaFamily::Fgm { theta } => CopulaRepr::Fgm { theta },
        }
    }
}

impl CopulaFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CopulaFamily::Independence => Ok(()),
            CopulaFamily::Fgm { theta } => {
                if (-1.0..=1.0).contains(&theta) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "FGM theta must lie in [-1,1], got {theta}"
                    )))
                }
            }
        }
    }

    /// Dependence parameter; zero for the independence copula.
    pub fn theta(&self) -> f64 {
        match *self {
            CopulaFamily::Independence => 0.0,
            CopulaFamily::Fgm { theta } => theta,
        }
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        u * v * (1.0 + self.theta() * (1.0 - u) * (1.0 - v))
    }

    /// Slope `a` of the conditional copula `v + a v (1 - v)` of `V` given
    /// the event selected by `sense` at level `u`.
    pub fn conditional_slope(&self, sense: Sense, u: f64) -> f64 {
        match sense {
            Sense::GivenLe => self.theta() * (1.0 - u),
            Sense::GivenGe => -self.theta() * u,
        }
    }

    /// Slope of the conditional copula of `V` given `U = u` exactly.
    pub fn pointwise_slope(&self, u: f64) -> f64 {
        self.theta() * (1.0 - 2.0 * u)
    }
}

/// Conditional-quantile form `v + a v (1 - v) = p`, solved without cancellation.
#[inline]
pub(crate) fn solve_slope_form(a: f64, p: f64) -> f64 {
    let b = 1.0 + a;
    2.0 * p / (b + (b * b - 4.0 * a * p).max(0.0).sqrt())
}

/// `dv/dp` of [`solve_slope_form`].
#[inline]
pub(crate) fn slope_form_derivative(a: f64, p: f64) -> f64 {
    let b = 1.0 + a;
    1.0 / (b * b - 4.0 * a * p).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// Conditioning event on `X` relative to `Q_X(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    /// `X <= Q_X(u)`
    GivenLe,
    /// `X >= Q_X(u)`
    GivenGe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// Orthant direction `(eps1, eps2)`: `-` selects `<=`, `+` selects `>=`,
/// first for `X`, then for `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    pub x: Sign,
    pub y: Sign,
}

impl Direction {
    pub const MM: Direction = Direction {
        x: Sign::Minus,
        y: Sign::Minus,
    };
    pub const PM: Direction = Direction {
        x: Sign::Plus,
        y: Sign::Minus,
    };
    pub const MP: Direction = Direction {
        x: Sign::Minus,
        y: Sign::Plus,
    };
    pub const PP: Direction = Direction {
        x: Sign::Plus,
        y: Sign::Plus,
    };
    pub const ALL: [Direction; 4] = [Self::MM, Self::PM, Self::MP, Self::PP];

    /// The same orthant with the roles of `X` and `Y` exchanged.
    pub fn transposed(self) -> Direction {
        Direction {
            x: self.y,
            y: self.x,
        }
    }

    /// Conditioning event on `X` used by the curve parametrization.
    pub fn sense(self) -> Sense {
        match self.x {
            Sign::Minus => Sense::GivenLe,
            Sign::Plus => Sense::GivenGe,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.x.symbol(), self.y.symbol())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sign = |c| match c {
            '-' => Ok(Sign::Minus),
            '+' => Ok(Sign::Plus),
            _ => Err(()),
        };
        let chars: Vec<char> = s.trim().chars().collect();
        match chars.as_slice() {
            [a, b] => match (sign(*a), sign(*b)) {
                (Ok(x), Ok(y)) => Ok(Direction { x, y }),
                _ => Err(Error::Domain(format!(
                    "direction must be one of --, +-, -+, ++, got {s:?}"
                ))),
            },
            _ => Err(Error::Domain(format!(
                "direction must be one of --, +-, -+, ++, got {s:?}"
            ))),
        }
    }
}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Absolutely continuous random vector `(X, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivariateModel {
    pub marginal_x: MarginalFamily,
    pub marginal_y: MarginalFamily,
    pub copula: CopulaFamily,
}

impl BivariateModel {
    pub fn new(
        marginal_x: MarginalFamily,
        marginal_y: MarginalFamily,
        copula: CopulaFamily,
    ) -> Result<Self> {
        let model = Self {
            marginal_x,
            marginal_y,
            copula,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn independent(marginal_x: MarginalFamily, marginal_y: MarginalFamily) -> Result<Self> {
        Self::new(marginal_x, marginal_y, CopulaFamily::Independence)
    }

    pub fn validate(&self) -> Result<()> {
        self.marginal_x.validate()?;
        self.marginal_y.validate()?;
        self.copula.validate()
    }

    pub fn marginal(&self, axis: Axis) -> &MarginalFamily {
        match axis {
            Axis::X => &self.marginal_x,
            Axis::Y => &self.marginal_y,
        }
    }

    /// `Q(u)` of one marginal. Interior arguments are clipped; the
    /// endpoints 0 and 1 are accepted only where the quantile is finite.
    pub fn marginal_quantile(&self, axis: Axis, u: f64, cfg: &NumericConfig) -> Result<f64> {
        check_probability("u", u)?;
        let m = self.marginal(axis);
        if u == 0.0 || u == 1.0 {
            let q = m.quantile(u);
            return if q.is_finite() {
                Ok(q)
            } else {
                Err(Error::Boundary {
                    what: format!("{axis:?}-quantile"),
                    endpoint: u,
                })
            };
        }
        Ok(m.quantile(cfg.clip(u)))
    }

    /// `F_eps(x, y)`: probability of the orthant anchored at `(x, y)`.
    pub fn orthant_prob(&self, dir: Direction, x: f64, y: f64) -> f64 {
        let fx = self.marginal_x.cdf(x);
        let gy = self.marginal_y.cdf(y);
        let c = self.copula.cdf(fx, gy);
        let p = match (dir.x, dir.y) {
            (Sign::Minus, Sign::Minus) => c,
            (Sign::Plus, Sign::Minus) => gy - c,
            (Sign::Minus, Sign::Plus) => fx - c,
            (Sign::Plus, Sign::Plus) => 1.0 - fx - gy + c,
        };
        p.clamp(0.0, 1.0)
    }

    fn conditioning_level(&self, sense: Sense, u: f64, cfg: &NumericConfig) -> Result<f64> {
        check_probability("conditioning_u", u)?;
        match sense {
            Sense::GivenLe if u == 0.0 => Err(Error::DegenerateConditioning {
                event: "X <= Q_X(u)",
                u,
            }),
            Sense::GivenGe if u == 1.0 => Err(Error::DegenerateConditioning {
                event: "X >= Q_X(u)",
                u,
            }),
            _ => Ok(cfg.clip(u)),
        }
    }

    /// CDF of `Y` given `X <= Q_X(u)` (`GivenLe`) or `X >= Q_X(u)` (`GivenGe`).
    pub fn conditional_cdf(
        &self,
        sense: Sense,
        conditioning_u: f64,
        y: f64,
        cfg: &NumericConfig,
    ) -> Result<f64> {
        let u = self.conditioning_level(sense, conditioning_u, cfg)?;
        let v = self.marginal_y.cdf(y);
        let c = self.copula.cdf(u, v);
        let g = match sense {
            Sense::GivenLe => c / u,
            Sense::GivenGe => (v - c) / (1.0 - u),
        };
        Ok(g.clamp(0.0, 1.0))
    }

    /// Copula-scale conditional quantile: the `v` with conditional CDF `p`.
    pub fn conditional_level(
        &self,
        sense: Sense,
        conditioning_u: f64,
        p: f64,
        cfg: &NumericConfig,
    ) -> Result<f64> {
        let u = self.conditioning_level(sense, conditioning_u, cfg)?;
        check_probability("p", p)?;
        let a = self.copula.conditional_slope(sense, u);
        Ok(solve_slope_form(a, cfg.clip(p)))
    }

    /// Conditional quantile of `Y` (the function `phi` for `GivenLe`).
    pub fn conditional_quantile(
        &self,
        sense: Sense,
        conditioning_u: f64,
        p: f64,
        cfg: &NumericConfig,
    ) -> Result<f64> {
        let v = self.conditional_level(sense, conditioning_u, p, cfg)?;
        Ok(self.marginal_y.quantile(v))
    }

    /// Derivative of [`Self::conditional_quantile`] with respect to `p`.
    pub fn conditional_quantile_derivative(
        &self,
        sense: Sense,
        conditioning_u: f64,
        p: f64,
        cfg: &NumericConfig,
    ) -> Result<f64> {
        let u = self.conditioning_level(sense, conditioning_u, cfg)?;
        check_probability("p", p)?;
        let p = cfg.clip(p);
        let a = self.copula.conditional_slope(sense, u);
        let v = solve_slope_form(a, p);
        Ok(self.marginal_y.quantile_derivative(v) * slope_form_derivative(a, p))
    }

    /// Generic route: bisection on [`Self::conditional_cdf`] in `y`, with
    /// the upper bracket expanded geometrically for unbounded supports.
    pub fn conditional_quantile_bisect(
        &self,
        sense: Sense,
        conditioning_u: f64,
        p: f64,
        cfg: &NumericConfig,
    ) -> Result<f64> {
        self.conditioning_level(sense, conditioning_u, cfg)?;
        check_open_probability("p", p)?;
        let p = cfg.clip(p);
        let g = |y: f64| {
            self.conditional_cdf(sense, conditioning_u, y, cfg)
                .unwrap_or(f64::NAN)
        };
        let (lo, sup) = self.marginal_y.support();
        let mut hi = if sup.is_finite() {
            sup
        } else {
            lo + self.marginal_y.quantile(0.5).max(1.0)
        };
        let mut expansions = 0;
        while g(hi) < p {
            if expansions == 64 {
                return Err(Error::InversionFailure { lo, hi });
            }
            hi = lo + 2.0 * (hi - lo);
            expansions += 1;
        }
        invert_monotone(g, p, (lo, hi), cfg)
    }

    /// Marginals exchanged and copula arguments transposed.
    pub fn swap_axes(&self) -> BivariateModel {
        // Both built-in copulas are exchangeable in (u, v).
        BivariateModel {
            marginal_x: self.marginal_y,
            marginal_y: self.marginal_x,
            copula: self.copula,
        }
    }
}

impl fmt::Display for BivariateModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} x {}, {}",
            self.marginal_x, self.marginal_y, self.copula
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn uniform_fgm(theta: f64) -> BivariateModel {
        BivariateModel::new(
            MarginalFamily::Uniform01,
            MarginalFamily::Uniform01,
            CopulaFamily::Fgm { theta },
        )
        .unwrap()
    }

    fn families() -> Vec<MarginalFamily> {
        vec![
            MarginalFamily::Uniform01,
            MarginalFamily::Exponential { rate: 1.0 },
            MarginalFamily::Exponential { rate: 2.5 },
            MarginalFamily::Pareto {
                scale: 1.0,
                shape: 2.0,
            },
            MarginalFamily::Pareto {
                scale: 0.5,
                shape: 0.7,
            },
            MarginalFamily::Weibull {
                scale: 1.0,
                shape: 2.0,
            },
            MarginalFamily::Weibull {
                scale: 2.0,
                shape: 0.8,
            },
        ]
    }

    #[test]
    fn marginal_quantile_examples() {
        let m = BivariateModel::independent(
            MarginalFamily::Uniform01,
            MarginalFamily::Exponential { rate: 1.0 },
        )
        .unwrap();
        assert_eq!(m.marginal_quantile(Axis::X, 0.5, &cfg()).unwrap(), 0.5);
        let q = m.marginal_quantile(Axis::Y, 0.5, &cfg()).unwrap();
        assert!((q - std::f64::consts::LN_2).abs() < 1e-6);

        let pareto = MarginalFamily::Pareto {
            scale: 1.0,
            shape: 2.0,
        };
        assert!((pareto.quantile(0.75) - 2.0).abs() < 1e-15);
        // Independent check: solve 1 - (1/x)^2 = 0.75 by bisection.
        let x = invert_monotone(|x| pareto.cdf(x), 0.75, (1.0, 100.0), &cfg()).unwrap();
        assert!((x - 2.0).abs() < 1e-10);
    }

    #[test]
    fn marginal_quantile_errors() {
        let m = BivariateModel::independent(
            MarginalFamily::Exponential { rate: 1.0 },
            MarginalFamily::Uniform01,
        )
        .unwrap();
        assert!(matches!(
            m.marginal_quantile(Axis::X, 1.5, &cfg()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            m.marginal_quantile(Axis::X, 1.0, &cfg()),
            Err(Error::Boundary { endpoint, .. }) if endpoint == 1.0
        ));
        assert_eq!(m.marginal_quantile(Axis::X, 0.0, &cfg()).unwrap(), 0.0);
        assert_eq!(m.marginal_quantile(Axis::Y, 1.0, &cfg()).unwrap(), 1.0);
    }

    #[test]
    fn quantile_cdf_round_trip() {
        for fam in families() {
            for i in 1..100 {
                let u = i as f64 / 100.0;
                let back = fam.cdf(fam.quantile(u));
                assert!((back - u).abs() <= 1e-9, "{fam:?} u={u} back={back}");
            }
        }
    }

    #[test]
    fn analytic_quantile_derivative_matches_differences() {
        for fam in families() {
            for u in [0.1, 0.4, 0.8] {
                let numeric = crate::numerics::differentiate(|t| fam.quantile(t), u, &cfg());
                let exact = fam.quantile_derivative(u);
                assert!(
                    ((numeric - exact) / exact).abs() < 1e-7,
                    "{fam:?} u={u}: {numeric} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn orthant_examples() {
        let ind = BivariateModel::independent(MarginalFamily::Uniform01, MarginalFamily::Uniform01)
            .unwrap();
        assert!((ind.orthant_prob(Direction::MM, 0.4, 0.5) - 0.2).abs() < 1e-15);
        let fgm = uniform_fgm(1.0);
        // 0.25 (1 + 0.25) evaluated directly.
        assert!((fgm.orthant_prob(Direction::MM, 0.5, 0.5) - 0.3125).abs() < 1e-15);
    }

    #[test]
    fn conditional_cdf_examples() {
        let ind = BivariateModel::independent(
            MarginalFamily::Uniform01,
            MarginalFamily::Exponential { rate: 1.0 },
        )
        .unwrap();
        let y = ind.marginal_y.quantile(0.6);
        let g = ind.conditional_cdf(Sense::GivenLe, 0.3, y, &cfg()).unwrap();
        assert!((g - 0.6).abs() < 1e-12);
        let top = ind
            .conditional_cdf(Sense::GivenGe, 0.3, 1e6, &cfg())
            .unwrap();
        assert_eq!(top, 1.0);

        let fgm = uniform_fgm(1.0);
        let g = fgm
            .conditional_cdf(Sense::GivenLe, 0.5, 0.5, &cfg())
            .unwrap();
        // G1(v) = v (1.5 - 0.5 v) at v = 0.5.
        assert!((g - 0.625).abs() < 1e-15);
    }

    #[test]
    fn degenerate_conditioning() {
        let fgm = uniform_fgm(0.5);
        assert!(matches!(
            fgm.conditional_cdf(Sense::GivenLe, 0.0, 0.5, &cfg()),
            Err(Error::DegenerateConditioning { .. })
        ));
        assert!(matches!(
            fgm.conditional_quantile(Sense::GivenGe, 1.0, 0.5, &cfg()),
            Err(Error::DegenerateConditioning { .. })
        ));
    }

    #[test]
    fn conditional_quantile_examples() {
        let ind = BivariateModel::independent(MarginalFamily::Uniform01, MarginalFamily::Uniform01)
            .unwrap();
        let y = ind
            .conditional_quantile(Sense::GivenLe, 0.3, 0.5, &cfg())
            .unwrap();
        assert!((y - 0.5).abs() < 1e-15);

        let fgm = uniform_fgm(1.0);
        let y = fgm
            .conditional_quantile(Sense::GivenLe, 0.5, 0.5, &cfg())
            .unwrap();
        // Oracle: plain bisection on 1.5 v - 0.5 v^2 = 0.5.
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if 1.5 * mid - 0.5 * mid * mid < 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((y - lo).abs() < 1e-12);
        assert!((y - 0.381966).abs() < 1e-6);

        let exp = BivariateModel::independent(
            MarginalFamily::Uniform01,
            MarginalFamily::Pareto {
                scale: 2.0,
                shape: 3.0,
            },
        )
        .unwrap();
        let low = exp
            .conditional_quantile(Sense::GivenLe, 0.4, 0.0, &cfg())
            .unwrap();
        assert!((low - 2.0).abs() < 1e-9);
    }

    #[test]
    fn bisection_route_agrees_with_closed_form() {
        let model = BivariateModel::new(
            MarginalFamily::Exponential { rate: 1.0 },
            MarginalFamily::Weibull {
                scale: 1.5,
                shape: 2.0,
            },
            CopulaFamily::Fgm { theta: -0.7 },
        )
        .unwrap();
        for sense in [Sense::GivenLe, Sense::GivenGe] {
            for u in [0.1, 0.5, 0.9] {
                for p in [0.05, 0.5, 0.95] {
                    let a = model.conditional_quantile(sense, u, p, &cfg()).unwrap();
                    let b = model
                        .conditional_quantile_bisect(sense, u, p, &cfg())
                        .unwrap();
                    assert!((a - b).abs() < 1e-9, "{sense:?} u={u} p={p}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn conditional_derivative_matches_differences() {
        let model = uniform_fgm(1.0);
        let d = model
            .conditional_quantile_derivative(Sense::GivenLe, 0.5, 0.5, &cfg())
            .unwrap();
        assert!((d - 2.0 / 5f64.sqrt()).abs() < 1e-14);
        let model = BivariateModel::new(
            MarginalFamily::Uniform01,
            MarginalFamily::Exponential { rate: 2.0 },
            CopulaFamily::Fgm { theta: 0.6 },
        )
        .unwrap();
        for sense in [Sense::GivenLe, Sense::GivenGe] {
            let f = |p| model.conditional_quantile(sense, 0.3, p, &cfg()).unwrap();
            let numeric = crate::numerics::differentiate(f, 0.4, &cfg());
            let exact = model
                .conditional_quantile_derivative(sense, 0.3, 0.4, &cfg())
                .unwrap();
            assert!((numeric - exact).abs() < 1e-7);
        }
    }

    #[test]
    fn swap_examples() {
        let m = BivariateModel::independent(
            MarginalFamily::Exponential { rate: 1.0 },
            MarginalFamily::Uniform01,
        )
        .unwrap();
        let s = m.swap_axes();
        assert_eq!(s.marginal_x, MarginalFamily::Uniform01);
        assert_eq!(s.marginal_y, MarginalFamily::Exponential { rate: 1.0 });
        assert_eq!(s.swap_axes(), m);
        assert_eq!(
            uniform_fgm(0.3).swap_axes().copula,
            CopulaFamily::Fgm { theta: 0.3 }
        );
    }

    #[test]
    fn direction_parsing() {
        for d in Direction::ALL {
            assert_eq!(d.to_string().parse::<Direction>().unwrap(), d);
        }
        assert_eq!("+-".parse::<Direction>().unwrap(), Direction::PM);
        assert!("+".parse::<Direction>().is_err());
        assert!("x-".parse::<Direction>().is_err());
        assert_eq!(Direction::PM.transposed(), Direction::MP);
    }

    #[test]
    fn model_json_schema() {
        let json = r#"{
            "marginal_x": {"family": "Pareto", "scale": 1.0, "shape": 2.0},
            "marginal_y": {"family": "Exponential", "rate": 1.0},
            "copula": {"family": "FGM", "theta": 0.5}
        }"#;
        let m: BivariateModel = serde_json::from_str(json).unwrap();
        assert_eq!(m.copula, CopulaFamily::Fgm { theta: 0.5 });
        let back: BivariateModel =
            serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);

        let unknown = r#"{
            "marginal_x": {"family": "Uniform01", "rate": 1.0},
            "marginal_y": {"family": "Uniform01"},
            "copula": {"family": "Independence"}
        }"#;
        assert!(serde_json::from_str::<BivariateModel>(unknown).is_err());
        let extra = r#"{
            "marginal_x": {"family": "Uniform01"},
            "marginal_y": {"family": "Uniform01"},
            "copula": {"family": "Independence"},
            "colour": 3
        }"#;
        assert!(serde_json::from_str::<BivariateModel>(extra).is_err());
        let bad = r#"{
            "marginal_x": {"family": "Exponential", "rate": -1.0},
            "marginal_y": {"family": "Uniform01"},
            "copula": {"family": "Independence"}
        }"#;
        assert!(serde_json::from_str::<BivariateModel>(bad).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(MarginalFamily::Exponential { rate: 0.0 }
            .validate()
            .is_err());
        assert!(MarginalFamily::Pareto {
            scale: 1.0,
            shape: -2.0
        }
        .validate()
        .is_err());
        assert!(CopulaFamily::Fgm { theta: 1.5 }.validate().is_err());
    }

    fn any_model() -> impl Strategy<Value = BivariateModel> {
        let fam = prop_oneof![
            Just(MarginalFamily::Uniform01),
            (0.2..5.0f64).prop_map(|rate| MarginalFamily::Exponential { rate }),
            (0.5..3.0f64, 0.3..5.0f64)
                .prop_map(|(scale, shape)| MarginalFamily::Pareto { scale, shape }),
            (0.5..3.0f64, 0.5..4.0f64)
                .prop_map(|(scale, shape)| MarginalFamily::Weibull { scale, shape }),
        ];
        (fam.clone(), fam, -1.0..=1.0f64).prop_map(|(x, y, theta)| BivariateModel {
            marginal_x: x,
            marginal_y: y,
            copula: CopulaFamily::Fgm { theta },
        })
    }

    proptest! {
        #[test]
        fn orthants_sum_to_one(m in any_model(), u in 0.001..0.999f64, v in 0.001..0.999f64) {
            let x = m.marginal_x.quantile(u);
            let y = m.marginal_y.quantile(v);
            let total: f64 = Direction::ALL.iter().map(|d| m.orthant_prob(*d, x, y)).sum();
            prop_assert!((total - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn fgm_rectangles_are_nonnegative(
            theta in -1.0..=1.0f64,
            u1 in 0.0..1.0f64, du in 0.0..1.0f64,
            v1 in 0.0..1.0f64, dv in 0.0..1.0f64,
        ) {
            let c = CopulaFamily::Fgm { theta };
            let u2 = u1 + du * (1.0 - u1);
            let v2 = v1 + dv * (1.0 - v1);
            let vol = c.cdf(u2, v2) - c.cdf(u1, v2) - c.cdf(u2, v1) + c.cdf(u1, v1);
            prop_assert!(vol >= -1e-12);
        }

        #[test]
        fn fgm_boundary_conditions(theta in -1.0..=1.0f64, t in 0.0..=1.0f64) {
            let c = CopulaFamily::Fgm { theta };
            prop_assert_eq!(c.cdf(t, 0.0), 0.0);
            prop_assert_eq!(c.cdf(0.0, t), 0.0);
            prop_assert!((c.cdf(t, 1.0) - t).abs() < 1e-15);
            prop_assert!((c.cdf(1.0, t) - t).abs() < 1e-15);
        }

        #[test]
        fn conditional_cdf_is_monotone(
            m in any_model(),
            u in 0.01..0.99f64,
            v1 in 0.0..1.0f64,
            v2 in 0.0..1.0f64,
        ) {
            let (lo, hi) = if v1 <= v2 { (v1, v2) } else { (v2, v1) };
            let y1 = m.marginal_y.quantile(lo * 0.999);
            let y2 = m.marginal_y.quantile(hi * 0.999);
            for sense in [Sense::GivenLe, Sense::GivenGe] {
                let g1 = m.conditional_cdf(sense, u, y1, &cfg()).unwrap();
                let g2 = m.conditional_cdf(sense, u, y2, &cfg()).unwrap();
                prop_assert!(g1 <= g2 + 1e-12);
            }
        }

        #[test]
        fn conditional_quantile_inverts_cdf(
            m in any_model(),
            u in 0.01..0.99f64,
            p in 0.01..0.99f64,
        ) {
            for sense in [Sense::GivenLe, Sense::GivenGe] {
                let y = m.conditional_quantile(sense, u, p, &cfg()).unwrap();
                let back = m.conditional_cdf(sense, u, y, &cfg()).unwrap();
                prop_assert!((back - p).abs() <= 1e-10, "{:?}: {} vs {}", sense, back, p);
            }
        }

        #[test]
        fn swap_relabels_orthants(m in any_model(), u in 0.01..0.99f64, v in 0.01..0.99f64) {
            let x = m.marginal_x.quantile(u);
            let y = m.marginal_y.quantile(v);
            let s = m.swap_axes();
            for d in Direction::ALL {
                let a = m.orthant_prob(d, x, y);
                let b = s.orthant_prob(d.transposed(), y, x);
                prop_assert!((a - b).abs() < 1e-15);
            }
        }
    }
}
