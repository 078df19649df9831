//! Seeded sampling from built-in models and sample versions of the curve
//! and of the first-component mean residual life.

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curves::{check_admissible, conditional_level, CurvePoint, QuantileCurve};
use crate::error::{check_open_probability, Error, Result};
use crate::models::{solve_slope_form, BivariateModel, Direction, Sign};

/// Smallest conditioning subsample or exceedance set accepted by default.
pub const MIN_COND_N: usize = 30;

/// Draws from a model, reproducible from `(model, n, seed)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub pairs: Vec<(f64, f64)>,
    pub seed: u64,
    pub n: usize,
    pub model_tag: String,
}

impl SampleSet {
    /// Wraps externally produced pairs (for instance read from a file).
    pub fn from_pairs(pairs: Vec<(f64, f64)>, seed: u64, model_tag: impl Into<String>) -> Self {
        Self {
            n: pairs.len(),
            pairs,
            seed,
            model_tag: model_tag.into(),
        }
    }

    fn sorted_x(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self.pairs.iter().map(|p| p.0).collect();
        xs.sort_by(f64::total_cmp);
        xs
    }
}

/// `n` pairs: `U` uniform, `V` by inverting the conditional copula given
/// `U`, both mapped through the marginal quantiles. ChaCha8 stream.
pub fn sample(model: &BivariateModel, n: usize, seed: u64) -> Result<SampleSet> {
    model.validate()?;
    if n == 0 {
        return Err(Error::Domain("sample size n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..n)
        .map(|_| {
            let u: f64 = rng.sample(Open01);
            let w: f64 = rng.sample(Open01);
            let v = solve_slope_form(model.copula.pointwise_slope(u), w);
            (model.marginal_x.quantile(u), model.marginal_y.quantile(v))
        })
        .collect();
    Ok(SampleSet::from_pairs(pairs, seed, model.to_string()))
}

/// Lower sample quantile: the `ceil(n u)`-th order statistic of sorted data.
pub fn empirical_quantile(sorted: &[f64], u: f64) -> f64 {
    let n = sorted.len();
    let k = (n as f64 * u).ceil() as usize;
    sorted[k.clamp(1, n) - 1]
}

/// Sample version of the level-`p` curve on `u_grid`, with the default
/// [`MIN_COND_N`].
pub fn empirical_curve(
    sample: &SampleSet,
    p: f64,
    dir: Direction,
    u_grid: &[f64],
) -> Result<QuantileCurve> {
    empirical_curve_with(sample, p, dir, u_grid, MIN_COND_N)
}

pub fn empirical_curve_with(
    sample: &SampleSet,
    p: f64,
    dir: Direction,
    u_grid: &[f64],
    min_cond_n: usize,
) -> Result<QuantileCurve> {
    check_open_probability("p", p)?;
    for &u in u_grid {
        check_admissible(p, dir, u)?;
    }
    let xs = sorted_nonempty(sample)?;
    let mut points = Vec::with_capacity(u_grid.len());
    let mut sub = Vec::with_capacity(sample.pairs.len());
    for &u in u_grid {
        let x = empirical_quantile(&xs, u);
        sub.clear();
        sub.extend(sample.pairs.iter().filter_map(|&(xi, yi)| {
            let keep = match dir.x {
                Sign::Minus => xi <= x,
                Sign::Plus => xi >= x,
            };
            keep.then_some(yi)
        }));
        if sub.len() < min_cond_n {
            return Err(Error::InsufficientMass {
                u,
                count: sub.len(),
                needed: min_cond_n,
            });
        }
        sub.sort_by(f64::total_cmp);
        let y = empirical_quantile(&sub, conditional_level(p, dir, u).clamp(0.0, 1.0));
        points.push(CurvePoint { u, x, y });
    }
    Ok(QuantileCurve { p, dir, points })
}

fn sorted_nonempty(sample: &SampleSet) -> Result<Vec<f64>> {
    if sample.pairs.is_empty() {
        return Err(Error::Domain("sample is empty".into()));
    }
    Ok(sample.sorted_x())
}

/// Sample mean residual life of `X` at level `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMrl {
    pub value: f64,
    pub std_error: f64,
    /// Number of exceedances used.
    pub count: usize,
}

/// Mean of `x_i - x(u)` over the `x_i` exceeding the sample `u`-quantile.
pub fn empirical_mrl_first(sample: &SampleSet, u: f64) -> Result<EmpiricalMrl> {
    empirical_mrl_first_with(sample, u, MIN_COND_N)
}

pub fn empirical_mrl_first_with(
    sample: &SampleSet,
    u: f64,
    min_cond_n: usize,
) -> Result<EmpiricalMrl> {
    check_open_probability("u", u)?;
    let xs = sorted_nonempty(sample)?;
    let q = empirical_quantile(&xs, u);
    let excess: Vec<f64> = xs.iter().filter(|&&x| x > q).map(|&x| x - q).collect();
    let count = excess.len();
    if count < min_cond_n {
        return Err(Error::InsufficientMass {
            u,
            count,
            needed: min_cond_n,
        });
    }
    let mean = excess.iter().sum::<f64>() / count as f64;
    let var = excess.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
    Ok(EmpiricalMrl {
        value: mean,
        std_error: (var / count as f64).sqrt(),
        count,
    })
}

/// Pearson correlation of the pairs.
pub fn sample_correlation(sample: &SampleSet) -> f64 {
    let n = sample.pairs.len() as f64;
    let (mx, my) = sample
        .pairs
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x / n, b + y / n));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &sample.pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Fraction of pairs in the orthant of direction `dir` anchored at `(x, y)`.
pub fn empirical_orthant_frequency(sample: &SampleSet, dir: Direction, x: f64, y: f64) -> f64 {
    let hits = sample
        .pairs
        .iter()
        .filter(|&&(xi, yi)| {
            let in_x = match dir.x {
                Sign::Minus => xi <= x,
                Sign::Plus => xi >= x,
            };
            let in_y = match dir.y {
                Sign::Minus => yi <= y,
                Sign::Plus => yi >= y,
            };
            in_x && in_y
        })
        .count();
    hits as f64 / sample.pairs.len() as f64
}
