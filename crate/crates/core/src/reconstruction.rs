//! Recovery of a quantile function from any one of its reliability
//! functions, and the hazard / mean residual life identity.
//!
//! With `Q(0)` the lower end of the support and `mu` the mean,
//!
//! ```text
//! Q(t) = Q(0) + int_0^t dz / ((1 - z) h(z))
//! Q(t) = mu - m(t) + int_0^t m(z) / (1 - z) dz
//! Q(t) = Q(0) + int_0^t dz / (z r(z))
//! Q(t) = Q(0) + eta(t) + int_0^t eta(z) / z dz
//! ```
//!
//! The last form needs no mean. The inputs are plain callables so that
//! analytic functions can be fed in as well as model-derived ones.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_open_probability, Error, Result};
use crate::models::BivariateModel;
use crate::numerics::{quadrature, Endpoint, NumericConfig};
use crate::reliability::{component_value, hazard_at, mrl_at, ComponentQuantile, ReliabilityKind};

/// First component (built on `Q_X`) or second (built on `phi`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    First,
    Second,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::First, Component::Second];

    /// The quantile function behind this component.
    pub fn quantile(
        self,
        model: &BivariateModel,
        conditioning_u: f64,
    ) -> Result<ComponentQuantile> {
        match self {
            Component::First => Ok(ComponentQuantile::first(model)),
            Component::Second => ComponentQuantile::second(model, conditioning_u),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::First => "first",
            Component::Second => "second",
        })
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "1" => Ok(Component::First),
            "second" | "2" => Ok(Component::Second),
            _ => Err(Error::Domain(format!(
                "component must be first or second, got {s:?}"
            ))),
        }
    }
}

/// Kind tag of a [`ComponentFunction`], e.g. `hazard1` or `rev-mrl2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentKind {
    pub reliability: ReliabilityKind,
    pub component: Component,
}

impl ComponentKind {
    pub fn new(reliability: ReliabilityKind, component: Component) -> Self {
        Self {
            reliability,
            component,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let index = match self.component {
            Component::First => 1,
            Component::Second => 2,
        };
        write!(f, "{}{index}", self.reliability)
    }
}

type Eval = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// A reliability function handed to the reconstruction maps.
pub struct ComponentFunction {
    pub kind: ComponentKind,
    eval: Box<Eval>,
    /// Mean of the underlying quantile function, for mean residual life.
    pub mean_hint: Option<f64>,
    /// `Q(0)`; zero unless set.
    pub support_start: f64,
}

impl fmt::Debug for ComponentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComponentFunction")
            .field("kind", &self.kind)
            .field("mean_hint", &self.mean_hint)
            .field("support_start", &self.support_start)
            .finish_non_exhaustive()
    }
}

impl ComponentFunction {
    pub fn new<F>(kind: ComponentKind, eval: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            kind,
            eval: Box::new(eval),
            mean_hint: None,
            support_start: 0.0,
        }
    }

    /// Wraps an infallible closure.
    pub fn from_fn<F>(kind: ComponentKind, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(kind, move |t| Ok(f(t)))
    }

    pub fn with_mean(mut self, mean: f64) -> Self {
        self.mean_hint = Some(mean);
        self
    }

    pub fn with_support_start(mut self, start: f64) -> Self {
        self.support_start = start;
        self
    }

    /// The `kind` function of `model`, with the second component anchored at
    /// `conditioning_u`. Carries the mean (mean residual life kinds only)
    /// and the lower end of the support.
    pub fn from_model(
        model: &BivariateModel,
        kind: ComponentKind,
        conditioning_u: f64,
        cfg: &NumericConfig,
    ) -> Result<Self> {
        let q = kind.component.quantile(model, conditioning_u)?;
        let mean_hint = match kind.reliability {
            ReliabilityKind::Mrl => Some(q.mean(cfg)?),
            _ => None,
        };
        let cfg = *cfg;
        let reliability = kind.reliability;
        Ok(Self {
            kind,
            eval: Box::new(move |t| component_value(&q, reliability, t, &cfg)),
            mean_hint,
            support_start: q.lower_support(),
        })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        (self.eval)(t)
    }

    fn positive(&self, z: f64) -> Result<f64> {
        let v = self.eval(z)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::Sign {
                what: "hazard",
                at: z,
                value: v,
            })
        }
    }

    fn expect(&self, reliability: ReliabilityKind) -> Result<()> {
        if self.kind.reliability == reliability {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!(
                "expected a {reliability} function, got {}",
                self.kind
            )))
        }
    }
}

/// A reconstructed quantile value and the part of it contributed by the
/// extrapolated tail inside the lower clip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reconstructed {
    pub value: f64,
    pub clip_tail: f64,
}

/// `int_0^t integrand` for every `t` of an increasing grid, accumulated
/// piecewise so the cost does not grow with the grid size.
///
/// The pieces are integrated in `w = -ln(1 - z)`, which turns power-law
/// growth towards `z = 1` into exponential growth that a uniform mesh
/// resolves with uniform relative accuracy.
fn cumulative<F>(mut integrand: F, ts: &[f64], cfg: &NumericConfig) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut in_w = |w: f64| -> Result<f64> {
        let survival = (-w).exp();
        Ok(integrand(-(-w).exp_m1())? * survival)
    };
    let mut out = Vec::with_capacity(ts.len());
    let mut acc = 0.0;
    let mut tail = 0.0;
    let mut prev = 0.0;
    for (i, &t) in ts.iter().enumerate() {
        let w = -(-t).ln_1p();
        if i == 0 {
            let q = quadrature(
                &mut in_w,
                0.0,
                w,
                Endpoint::Singular,
                Endpoint::Regular,
                cfg,
            )?;
            tail = q.tail_total()?;
            acc = q.value + tail;
        } else {
            let panels = ((cfg.quad_points as f64 * (w - prev)).ceil() as usize).max(16);
            let piece = NumericConfig {
                quad_points: panels + panels % 2,
                ..*cfg
            };
            acc += quadrature(
                &mut in_w,
                prev,
                w,
                Endpoint::Regular,
                Endpoint::Regular,
                &piece,
            )?
            .value;
        }
        out.push((acc, tail));
        prev = w;
    }
    Ok(out)
}

fn check_grid(ts: &[f64]) -> Result<()> {
    for &t in ts {
        check_open_probability("t", t)?;
    }
    if ts.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("t grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Reconstructs `Q` on an increasing grid from any kind of function.
pub fn reconstruct_grid(
    f: &ComponentFunction,
    ts: &[f64],
    cfg: &NumericConfig,
) -> Result<Vec<Reconstructed>> {
    check_grid(ts)?;
    let start = f.support_start;
    let rows = match f.kind.reliability {
        ReliabilityKind::Hazard => cumulative(|z| Ok(1.0 / ((1.0 - z) * f.positive(z)?)), ts, cfg)?
            .into_iter()
            .map(|(acc, tail)| (start + acc, tail))
            .collect::<Vec<_>>(),
        ReliabilityKind::RevHazard => cumulative(|z| Ok(1.0 / (z * f.positive(z)?)), ts, cfg)?
            .into_iter()
            .map(|(acc, tail)| (start + acc, tail))
            .collect(),
        ReliabilityKind::Mrl => {
            let mu = match f.mean_hint {
                Some(mu) => mu,
                None => {
                    let m0 = f.eval(cfg.sing_clip).map_err(|_| Error::MissingMean)?;
                    if !m0.is_finite() {
                        return Err(Error::MissingMean);
                    }
                    m0 + start
                }
            };
            let acc = cumulative(|z| Ok(f.eval(z)? / (1.0 - z)), ts, cfg)?;
            ts.iter()
                .zip(acc)
                .map(|(&t, (acc, tail))| Ok((mu - f.eval(t)? + acc, tail)))
                .collect::<Result<_>>()?
        }
        ReliabilityKind::RevMrl => {
            let acc = cumulative(|z| Ok(f.eval(z)? / z), ts, cfg)?;
            ts.iter()
                .zip(acc)
                .map(|(&t, (acc, tail))| Ok((start + f.eval(t)? + acc, tail)))
                .collect::<Result<_>>()?
        }
    };
    Ok(rows
        .into_iter()
        .map(|(value, clip_tail)| Reconstructed { value, clip_tail })
        .collect())
}

fn single(
    f: &ComponentFunction,
    reliability: ReliabilityKind,
    t: f64,
    cfg: &NumericConfig,
) -> Result<Reconstructed> {
    f.expect(reliability)?;
    Ok(reconstruct_grid(f, &[t], cfg)?[0])
}

/// `Q(t) = Q(0) + int_0^t dz / ((1 - z) h(z))`.
pub fn quantile_from_hazard(
    f: &ComponentFunction,
    t: f64,
    cfg: &NumericConfig,
) -> Result<Reconstructed> {
    single(f, ReliabilityKind::Hazard, t, cfg)
}

/// `Q(t) = mu - m(t) + int_0^t m(z) / (1 - z) dz`; without a mean hint,
/// `mu` is taken as `m` at the lower clip plus `Q(0)`.
pub fn quantile_from_mrl(
    f: &ComponentFunction,
    t: f64,
    cfg: &NumericConfig,
) -> Result<Reconstructed> {
    single(f, ReliabilityKind::Mrl, t, cfg)
}

/// `Q(t) = Q(0) + int_0^t dz / (z r(z))`.
pub fn quantile_from_reversed_hazard(
    f: &ComponentFunction,
    t: f64,
    cfg: &NumericConfig,
) -> Result<Reconstructed> {
    single(f, ReliabilityKind::RevHazard, t, cfg)
}

/// `Q(t) = Q(0) + eta(t) + int_0^t eta(z) / z dz`. Ignores any mean hint.
pub fn quantile_from_reversed_mrl(
    f: &ComponentFunction,
    t: f64,
    cfg: &NumericConfig,
) -> Result<Reconstructed> {
    single(f, ReliabilityKind::RevMrl, t, cfg)
}

/// `(1 - t) m(t) - int_t^1 dz / h(z)` for one component of `model`.
pub fn hazard_mrl_identity_residual(
    model: &BivariateModel,
    component: Component,
    conditioning_u: f64,
    t: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    check_open_probability("t", t)?;
    let q = component.quantile(model, conditioning_u)?;
    let lhs = (1.0 - t) * mrl_at(&q, t, cfg)?;
    let rhs = quadrature(
        |z| Ok(1.0 / hazard_at(&q, z, cfg)?),
        t,
        1.0,
        Endpoint::Regular,
        Endpoint::Singular,
        cfg,
    )?
    .corrected()?;
    Ok(lhs - rhs)
}

/// One row of a round-trip comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoundTripRow {
    pub t: f64,
    pub reconstructed: f64,
    pub reference: f64,
    pub abs_error: f64,
}

/// Derives the `reliability` function of one component from `model`,
/// reconstructs the quantile function from it on `ts`, and compares with
/// the quantile function itself.
pub fn round_trip(
    model: &BivariateModel,
    reliability: ReliabilityKind,
    component: Component,
    conditioning_u: f64,
    ts: &[f64],
    cfg: &NumericConfig,
) -> Result<Vec<RoundTripRow>> {
    let kind = ComponentKind::new(reliability, component);
    let f = ComponentFunction::from_model(model, kind, conditioning_u, cfg)?;
    let q = component.quantile(model, conditioning_u)?;
    let rec = reconstruct_grid(&f, ts, cfg)?;
    ts.iter()
        .zip(rec)
        .map(|(&t, r)| {
            let reference = q.value(t, cfg)?;
            Ok(RoundTripRow {
                t,
                reconstructed: r.value,
                reference,
                abs_error: (r.value - reference).abs(),
            })
        })
        .collect()
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{CopulaFamily, MarginalFamily, Sense};
    use crate::reliability::interior_grid;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn kind(r: ReliabilityKind, c: Component) -> ComponentKind {
        ComponentKind::new(r, c)
    }

    fn fgm_uniforms() -> BivariateModel {
        BivariateModel::new(
            MarginalFamily::Uniform01,
            MarginalFamily::Uniform01,
            CopulaFamily::Fgm { theta: 1.0 },
        )
        .unwrap()
    }

    const PHI_HALF: f64 = 0.381_966_011_250_105_1;

    #[test]
    fn hazard_examples() {
        let h =
            ComponentFunction::from_fn(kind(ReliabilityKind::Hazard, Component::First), |_| 1.0);
        let q = quantile_from_hazard(&h, 0.5, &cfg()).unwrap();
        assert!((q.value - 2f64.ln()).abs() < 1e-10);

        let h = ComponentFunction::from_fn(kind(ReliabilityKind::Hazard, Component::First), |z| {
            1.0 / (1.0 - z)
        });
        assert!((quantile_from_hazard(&h, 0.7, &cfg()).unwrap().value - 0.7).abs() < 1e-10);

        let kind2 = kind(ReliabilityKind::Hazard, Component::Second);
        let h2 = ComponentFunction::from_model(&fgm_uniforms(), kind2, 0.5, &cfg()).unwrap();
        let q = quantile_from_hazard(&h2, 0.5, &cfg()).unwrap();
        assert!((q.value - PHI_HALF).abs() < 1e-9, "{}", q.value);
    }

    #[test]
    fn nonpositive_hazard_is_rejected() {
        let h = ComponentFunction::from_fn(kind(ReliabilityKind::Hazard, Component::First), |z| {
            0.3 - z
        });
        assert!(matches!(
            quantile_from_hazard(&h, 0.6, &cfg()),
            Err(Error::Sign { .. })
        ));
        let r =
            ComponentFunction::from_fn(kind(ReliabilityKind::RevHazard, Component::First), |_| {
                -1.0
            });
        assert!(matches!(
            quantile_from_reversed_hazard(&r, 0.6, &cfg()),
            Err(Error::Sign { .. })
        ));
    }

    #[test]
    fn kind_is_checked() {
        let h =
            ComponentFunction::from_fn(kind(ReliabilityKind::Hazard, Component::First), |_| 1.0);
        assert!(matches!(
            quantile_from_mrl(&h, 0.5, &cfg()),
            Err(Error::KindMismatch(_))
        ));
        assert_eq!(h.kind.to_string(), "hazard1");
    }

    #[test]
    fn mrl_examples() {
        let m = ComponentFunction::from_fn(kind(ReliabilityKind::Mrl, Component::First), |_| 1.0)
            .with_mean(1.0);
        assert!((quantile_from_mrl(&m, 0.5, &cfg()).unwrap().value - 2f64.ln()).abs() < 1e-10);

        let m = ComponentFunction::from_fn(kind(ReliabilityKind::Mrl, Component::First), |z| {
            (1.0 - z) / 2.0
        })
        .with_mean(0.5);
        assert!((quantile_from_mrl(&m, 0.5, &cfg()).unwrap().value - 0.5).abs() < 1e-10);

        let kind2 = kind(ReliabilityKind::Mrl, Component::Second);
        let m2 = ComponentFunction::from_model(&fgm_uniforms(), kind2, 0.5, &cfg()).unwrap();
        // mu = int_0^1 (3 - sqrt(9 - 8z)) / 2 dz = 3/2 - (27 - 1) / 24.
        let mu = 1.5 - 26.0 / 24.0;
        assert!((m2.mean_hint.unwrap() - mu).abs() < 1e-10);
        let q = quantile_from_mrl(&m2, 0.5, &cfg()).unwrap();
        assert!((q.value - PHI_HALF).abs() < 1e-8, "{}", q.value);
    }

    #[test]
    fn mean_recovered_from_the_function() {
        let m = ComponentFunction::from_fn(kind(ReliabilityKind::Mrl, Component::First), |z| {
            (1.0 - z) / 2.0
        });
        let q = quantile_from_mrl(&m, 0.5, &cfg()).unwrap();
        assert!((q.value - 0.5).abs() < 1e-10);

        let broken = ComponentFunction::new(kind(ReliabilityKind::Mrl, Component::First), |z| {
            if z < 1e-3 {
                Err(Error::Domain("unavailable".into()))
            } else {
                Ok(1.0)
            }
        });
        assert_eq!(
            quantile_from_mrl(&broken, 0.5, &cfg()),
            Err(Error::MissingMean)
        );
    }

    #[test]
    fn infinite_mean_blocks_mrl_input() {
        let heavy = BivariateModel::independent(
            MarginalFamily::Pareto {
                scale: 1.0,
                shape: 0.5,
            },
            MarginalFamily::Uniform01,
        )
        .unwrap();
        let err = ComponentFunction::from_model(
            &heavy,
            kind(ReliabilityKind::Mrl, Component::First),
            0.5,
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InfiniteMean(_)));
    }

    #[test]
    fn reversed_hazard_examples() {
        let r =
            ComponentFunction::from_fn(kind(ReliabilityKind::RevHazard, Component::First), |z| {
                1.0 / z
            });
        assert!(
            (quantile_from_reversed_hazard(&r, 0.7, &cfg())
                .unwrap()
                .value
                - 0.7)
                .abs()
                < 1e-10
        );
        let r =
            ComponentFunction::from_fn(kind(ReliabilityKind::RevHazard, Component::First), |z| {
                (1.0 - z) / z
            });
        let q = quantile_from_reversed_hazard(&r, 0.5, &cfg()).unwrap();
        assert!((q.value - 2f64.ln()).abs() < 1e-10);

        let kind2 = kind(ReliabilityKind::RevHazard, Component::Second);
        let r2 = ComponentFunction::from_model(&fgm_uniforms(), kind2, 0.5, &cfg()).unwrap();
        let q = quantile_from_reversed_hazard(&r2, 0.5, &cfg()).unwrap();
        assert!((q.value - PHI_HALF).abs() < 1e-9);
    }

    #[test]
    fn unbounded_below_diverges() {
        // r(z) = 1 / (z Q'(z)) for Q(z) = ln z, whose support has no lower end.
        let r =
            ComponentFunction::from_fn(kind(ReliabilityKind::RevHazard, Component::First), |_| 1.0);
        assert!(matches!(
            quantile_from_reversed_hazard(&r, 0.5, &cfg()),
            Err(Error::Divergent { endpoint: "lower" })
        ));
    }

    #[test]
    fn reversed_mrl_examples() {
        let eta =
            ComponentFunction::from_fn(kind(ReliabilityKind::RevMrl, Component::First), |z| {
                z / 2.0
            });
        assert!((quantile_from_reversed_mrl(&eta, 0.8, &cfg()).unwrap().value - 0.8).abs() < 1e-10);

        // eta of Exp(1) from the antiderivative (1 - z) ln(1 - z) + z.
        let eta =
            ComponentFunction::from_fn(kind(ReliabilityKind::RevMrl, Component::First), |z| {
                let anti = (1.0 - z) * (-z).ln_1p() + z;
                -(-z).ln_1p() - anti / z
            });
        let q = quantile_from_reversed_mrl(&eta, 0.5, &cfg()).unwrap();
        assert!((q.value - 2f64.ln()).abs() < 1e-8, "{}", q.value);

        let kind2 = kind(ReliabilityKind::RevMrl, Component::Second);
        let eta2 = ComponentFunction::from_model(&fgm_uniforms(), kind2, 0.5, &cfg()).unwrap();
        let q = quantile_from_reversed_mrl(&eta2, 0.5, &cfg()).unwrap();
        assert!((q.value - PHI_HALF).abs() < 1e-8);
    }

    #[test]
    fn reversed_mrl_ignores_the_mean() {
        let k = kind(ReliabilityKind::RevMrl, Component::First);
        let a = ComponentFunction::from_fn(k, |z| z / 2.0);
        let b = ComponentFunction::from_fn(k, |z| z / 2.0).with_mean(123.0);
        for t in [0.1, 0.5, 0.9] {
            assert_eq!(
                quantile_from_reversed_mrl(&a, t, &cfg()).unwrap(),
                quantile_from_reversed_mrl(&b, t, &cfg()).unwrap()
            );
        }
    }

    #[test]
    fn identity_examples() {
        let uni = BivariateModel::independent(MarginalFamily::Uniform01, MarginalFamily::Uniform01)
            .unwrap();
        let r = hazard_mrl_identity_residual(&uni, Component::First, 0.5, 0.5, &cfg()).unwrap();
        assert!(r.abs() <= 1e-9, "{r:e}");

        let e = MarginalFamily::Exponential { rate: 1.0 };
        let exp = BivariateModel::independent(e, e).unwrap();
        let r = hazard_mrl_identity_residual(&exp, Component::First, 0.5, 0.3, &cfg()).unwrap();
        assert!(r.abs() <= 1e-8, "{r:e}");

        let r = hazard_mrl_identity_residual(&fgm_uniforms(), Component::Second, 0.5, 0.5, &cfg())
            .unwrap();
        assert!(r.abs() <= 1e-6, "{r:e}");
    }

    #[test]
    fn grid_matches_single_points() {
        let model = BivariateModel::new(
            MarginalFamily::Weibull {
                scale: 1.0,
                shape: 2.0,
            },
            MarginalFamily::Exponential { rate: 1.0 },
            CopulaFamily::Fgm { theta: -0.5 },
        )
        .unwrap();
        let f = ComponentFunction::from_model(
            &model,
            kind(ReliabilityKind::Hazard, Component::Second),
            0.4,
            &cfg(),
        )
        .unwrap();
        let ts = linear_grid(0.1, 0.9, 5);
        let grid = reconstruct_grid(&f, &ts, &cfg()).unwrap();
        for (&t, g) in ts.iter().zip(&grid) {
            let one = quantile_from_hazard(&f, t, &cfg()).unwrap();
            assert!((one.value - g.value).abs() < 1e-9);
            let truth = model
                .conditional_quantile(Sense::GivenLe, 0.4, t, &cfg())
                .unwrap();
            assert!((g.value - truth).abs() < 1e-6);
        }
        assert!(reconstruct_grid(&f, &[0.5, 0.4], &cfg()).is_err());
        assert!(reconstruct_grid(&f, &[0.0, 0.4], &cfg()).is_err());
    }

    #[test]
    fn round_trips_on_a_heavy_tailed_model() {
        let model = BivariateModel::new(
            MarginalFamily::Pareto {
                scale: 1.0,
                shape: 3.0,
            },
            MarginalFamily::Weibull {
                scale: 2.0,
                shape: 1.5,
            },
            CopulaFamily::Fgm { theta: 0.5 },
        )
        .unwrap();
        let ts = linear_grid(0.05, 0.95, 7);
        for reliability in ReliabilityKind::ALL {
            for component in Component::BOTH {
                let rows = round_trip(&model, reliability, component, 0.5, &ts, &cfg()).unwrap();
                let worst = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
                assert!(worst <= 1e-4, "{reliability} {component}: {worst:e}");
            }
        }
    }

    #[test]
    fn identity_on_interior_grid() {
        let model = BivariateModel::new(
            MarginalFamily::Exponential { rate: 2.0 },
            MarginalFamily::Pareto {
                scale: 1.0,
                shape: 3.0,
            },
            CopulaFamily::Fgm { theta: -1.0 },
        )
        .unwrap();
        for component in Component::BOTH {
            for t in interior_grid(33) {
                let r = hazard_mrl_identity_residual(&model, component, 0.5, t, &cfg()).unwrap();
                assert!(r.abs() <= 1e-6, "{component} t={t}: {r:e}");
            }
        }
    }
}
