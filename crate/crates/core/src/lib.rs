//! Bivariate quantile curves and the quantile-based reliability functions
//! built on them: hazard rate, mean residual life, and their reversed-time
//! analogues, together with the inverse maps that recover a quantile curve
//! from each of those functions.
//!
//! Everything is indexed by probability levels rather than by points of the
//! support. The first component of each reliability vector is a function of
//! the marginal level `u` of `X`; the second is a function of the level of
//! `Y` conditional on `X <= Q_X(u)`.

pub mod curves;
pub mod error;
pub mod estimation;
pub mod models;
pub mod numerics;
pub mod reconstruction;
pub mod reliability;

pub use curves::{CurvePoint, QuantileCurve};
pub use error::{Error, Result};
pub use estimation::SampleSet;
pub use models::{Axis, BivariateModel, CopulaFamily, Direction, MarginalFamily, Sense, Sign};
pub use numerics::{Endpoint, NumericConfig, Quadrature, Tail};
pub use reconstruction::{Component, ComponentFunction, ComponentKind, Reconstructed};
pub use reliability::{ComponentQuantile, ReliabilityKind, ReliabilityVector};
