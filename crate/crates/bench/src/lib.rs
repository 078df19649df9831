//! Fixtures shared by the benchmarks.

use bivrel::{BivariateModel, CopulaFamily, MarginalFamily};

/// FGM theta = 0.5 with Pareto(1, 3) and Exp(1) marginals.
pub fn dependent_model() -> BivariateModel {
    BivariateModel::new(
        MarginalFamily::Pareto {
            scale: 1.0,
            shape: 3.0,
        },
        MarginalFamily::Exponential { rate: 1.0 },
        CopulaFamily::Fgm { theta: 0.5 },
    )
    .expect("valid parameters")
}

/// Independent Exp(1) marginals.
pub fn exponential_model() -> BivariateModel {
    BivariateModel::independent(
        MarginalFamily::Exponential { rate: 1.0 },
        MarginalFamily::Exponential { rate: 1.0 },
    )
    .expect("valid parameters")
}
