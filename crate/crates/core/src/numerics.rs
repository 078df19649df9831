//! Numerical kernels shared by every other module: central differences,
//! composite Simpson quadrature with explicitly declared endpoint
//! singularities, and bisection inversion of monotone functions.
//!
//! All kernels are deterministic for a fixed [`NumericConfig`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and grid sizes used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericConfig {
    /// Probability arguments are clipped to `[eps_boundary, 1 - eps_boundary]`.
    pub eps_boundary: f64,
    /// Relative step of the central-difference stencil.
    pub diff_step: f64,
    /// Composite Simpson panel count (per segment, even).
    pub quad_points: usize,
    /// Bisection tolerance on the probability scale.
    pub tol_root: f64,
    /// Distance kept from an endpoint declared singular.
    pub sing_clip: f64,
    /// Iteration cap for bisection.
    pub max_bisection: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            eps_boundary: 1e-12,
            diff_step: 1e-5,
            quad_points: 2048,
            tol_root: 1e-12,
            sing_clip: 1e-12,
            max_bisection: 200,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("eps_boundary", self.eps_boundary),
            ("diff_step", self.diff_step),
            ("tol_root", self.tol_root),
            ("sing_clip", self.sing_clip),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be a positive finite number, got {value}"
                )));
            }
        }
        if self.eps_boundary >= 0.5 {
            return Err(Error::InvalidConfig(format!(
                "eps_boundary must be below 0.5, got {}",
                self.eps_boundary
            )));
        }
        if self.quad_points < 2 || !self.quad_points.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "quad_points must be a positive even count, got {}",
                self.quad_points
            )));
        }
        if self.max_bisection == 0 {
            return Err(Error::InvalidConfig(
                "max_bisection must be positive".into(),
            ));
        }
        if self.sing_clip < self.eps_boundary {
            return Err(Error::InvalidConfig(format!(
                "sing_clip ({}) must not be smaller than eps_boundary ({})",
                self.sing_clip, self.eps_boundary
            )));
        }
        Ok(())
    }

    /// Clips a probability into `[eps_boundary, 1 - eps_boundary]`.
    #[inline]
    pub fn clip(&self, p: f64) -> f64 {
        p.clamp(self.eps_boundary, 1.0 - self.eps_boundary)
    }
}

/// Central-difference derivative with step `diff_step * max(|t|, 1)`.
pub fn differentiate<F: Fn(f64) -> f64>(f: F, t: f64, cfg: &NumericConfig) -> f64 {
    let h = cfg.diff_step * t.abs().max(1.0);
    (f(t + h) - f(t - h)) / (2.0 * h)
}

/// Central difference for functions of a probability: the stencil must stay
/// inside the open unit interval.
pub fn differentiate_unit<F: Fn(f64) -> f64>(f: F, t: f64, cfg: &NumericConfig) -> Result<f64> {
    let h = cfg.diff_step * t.abs().max(1.0);
    if t - h <= 0.0 {
        return Err(Error::Boundary {
            what: format!("central-difference stencil around {t} leaves (0,1)"),
            endpoint: 0.0,
        });
    }
    if t + h >= 1.0 {
        return Err(Error::Boundary {
            what: format!("central-difference stencil around {t} leaves (0,1)"),
            endpoint: 1.0,
        });
    }
    Ok(differentiate(f, t, cfg))
}

/// How an integration endpoint is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// Evaluated directly.
    Regular,
    /// Kept `sing_clip` away from; the adjoining half of the interval is
    /// integrated on a mesh that is uniform in the log-distance to the end.
    Singular,
}

/// Mass beyond the clip of a singular endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// Nothing was clipped (regular endpoint).
    Exact,
    /// Power-law extrapolation of the clipped piece.
    Estimated(f64),
    /// The integrand does not decay towards the endpoint; the clipped
    /// piece is unbounded or not resolvable.
    NonDecaying,
}

/// Result of [`quadrature`]: the clipped integral plus the tail estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub lower: Tail,
    pub upper: Tail,
}

impl Quadrature {
    /// Clipped value plus estimated tails; fails when a tail does not decay.
    pub fn corrected(&self) -> Result<f64> {
        Ok(self.value + self.tail_total()?)
    }

    pub fn tail_total(&self) -> Result<f64> {
        let part = |tail: Tail, endpoint| match tail {
            Tail::Exact => Ok(0.0),
            Tail::Estimated(t) => Ok(t),
            Tail::NonDecaying => Err(Error::Divergent { endpoint }),
        };
        Ok(part(self.lower, "lower")? + part(self.upper, "upper")?)
    }
}

/// Composite Simpson integral of `f` over `[a, b]`.
///
/// Singular endpoints are clipped by `sing_clip` and no tail is added, so
/// the result documents the clipped integral. Use [`quadrature`] for the
/// tail estimates.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    lower: Endpoint,
    upper: Endpoint,
    cfg: &NumericConfig,
) -> Result<f64> {
    quadrature(|z| Ok(f(z)), a, b, lower, upper, cfg).map(|q| q.value)
}

/// Fallible-integrand quadrature returning the clipped value and the tail
/// estimate at every singular endpoint.
///
/// The clip actually used is `min(sing_clip, 1e-6 * (b - a))` so that short
/// intervals keep a resolvable log mesh.
pub fn quadrature<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    lower: Endpoint,
    upper: Endpoint,
    cfg: &NumericConfig,
) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::Domain(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            lower: Tail::Exact,
            upper: Tail::Exact,
        });
    }
    let n = cfg.quad_points;
    let mut eval = |z: f64| -> Result<f64> {
        let v = f(z)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Integrand { at: z, value: v })
        }
    };

    if lower == Endpoint::Regular && upper == Endpoint::Regular {
        let value = simpson(&mut eval, a, b, n)?;
        return Ok(Quadrature {
            value,
            lower: Tail::Exact,
            upper: Tail::Exact,
        });
    }

    let clip = cfg.sing_clip.min(1e-6 * (b - a));
    let mid = a + 0.5 * (b - a);
    let half = mid - a;

    let (low_part, lower_tail) = match lower {
        Endpoint::Regular => (simpson(&mut eval, a, mid, n)?, Tail::Exact),
        Endpoint::Singular => log_part(&mut eval, a, 1.0, clip, half, n)?,
    };
    let (high_part, upper_tail) = match upper {
        Endpoint::Regular => (simpson(&mut eval, mid, b, n)?, Tail::Exact),
        Endpoint::Singular => log_part(&mut eval, b, -1.0, clip, b - mid, n)?,
    };
    Ok(Quadrature {
        value: low_part + high_part,
        lower: lower_tail,
        upper: upper_tail,
    })
}

fn simpson<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64, n: usize) -> Result<f64> {
    let h = (b - a) / n as f64;
    let mut sum = f(a)? + f(b)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h)?;
    }
    Ok(sum * h / 3.0)
}

const LOG_UPPER_SPAN: f64 = 2.0;

/// Integrates over `d in [clip, len]` where `z = end + sign * d`, using the
/// substitution `d = exp(s)`, and estimates the clipped piece `d < clip`.
fn log_part<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    end: f64,
    sign: f64,
    clip: f64,
    len: f64,
    n: usize,
) -> Result<(f64, Tail)> {
    let s0 = clip.ln();
    let s1 = len.ln();
    let mut g = |s: f64| -> Result<f64> {
        let d = s.exp();
        Ok(f(end + sign * d)? * d)
    };
    // Half of the panels go to the last few e-folds, where the log mesh is
    // coarsest in z.
    let value = if s1 - s0 > 3.0 * LOG_UPPER_SPAN {
        let m = ((n / 2).max(2) + 1) & !1;
        let (a, b) = (s1 - 3.0 * LOG_UPPER_SPAN, s1 - LOG_UPPER_SPAN);
        simpson(&mut g, s0, a, m)? + simpson(&mut g, a, b, m)? + simpson(&mut g, b, s1, m)?
    } else {
        simpson(&mut g, s0, s1, n)?
    };
    let g0 = g(s0)?;

    // Power-law fit g(s) ~ g0 * exp(beta * (s - s0)) through two points.
    let step = 1.0_f64.min(0.5 * (s1 - s0));
    let g1 = g(s0 + step)?;
    let tail = if g0 == 0.0 || g0.signum() != g1.signum() {
        Tail::Estimated(0.0)
    } else {
        let beta = (g1 / g0).ln() / step;
        if beta > 1e-3 {
            Tail::Estimated(g0 / beta)
        } else {
            Tail::NonDecaying
        }
    };
    Ok((value, tail))
}

/// Bisection for `g(t) = target` on a nondecreasing `g`.
///
/// Returns `t` with `|g(t) - target| <= tol_root`.
pub fn invert_monotone<G: Fn(f64) -> f64>(
    g: G,
    target: f64,
    bracket: (f64, f64),
    cfg: &NumericConfig,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let g_lo = g(lo);
    let g_hi = g(hi);
    let bracket_error = || Error::Bracket {
        lo: bracket.0,
        hi: bracket.1,
        g_lo,
        g_hi,
        target,
    };
    if !(lo < hi) || !(g_lo <= target && target <= g_hi) {
        return Err(bracket_error());
    }
    let (r_lo, r_hi) = ((g_lo - target).abs(), (g_hi - target).abs());
    let (mut best, mut best_residual) = if r_lo <= r_hi { (lo, r_lo) } else { (hi, r_hi) };
    if best_residual <= cfg.tol_root {
        return Ok(best);
    }
    let mut iterations = 0;
    while iterations < cfg.max_bisection {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let g_mid = g(mid);
        let residual = (g_mid - target).abs();
        if residual < best_residual {
            best = mid;
            best_residual = residual;
        }
        if residual <= cfg.tol_root {
            return Ok(mid);
        }
        if g_mid < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        best,
        residual: best_residual,
        iterations,
    })
}
