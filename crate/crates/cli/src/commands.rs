use std::path::Path;

use bivrel::curves::{curve_grid, curve_points, orthant_residual};
use bivrel::estimation::{empirical_curve, empirical_orthant_frequency, sample};
use bivrel::reconstruction::{hazard_mrl_identity_residual, linear_grid, round_trip, Component};
use bivrel::reliability::{interchanged, interior_grid, reliability_vector};
use bivrel::{NumericConfig, ReliabilityKind};
use serde::Serialize;

use crate::args::{Cli, CurveArgs, FieldArgs, Format, ReconstructArgs, SampleArgs, VerifyArgs};
use crate::failure::{Failure, Outcome};
use crate::format::{csv, num};
use crate::inputs::{load_model, load_numerics, load_sample, sample_csv, write_output};
use crate::svg;

pub const ROUND_TRIP_TOL: f64 = 1e-4;
pub const IDENTITY_TOL: f64 = 1e-6;

fn open_probability(name: &str, v: f64) -> Outcome<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{name} must lie in (0,1)")))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Outcome<()> {
    let cfg = load_numerics(cli.config.as_deref())?;
    let model_path = cli.model.as_deref();
    let text = match &cli.command {
        crate::args::Command::Curve(a) => curve(model_path, cli.format, &cfg, a)?,
        crate::args::Command::Field(a) => field(model_path, cli.format, &cfg, a)?,
        crate::args::Command::Reconstruct(a) => reconstruct(model_path, cli.format, &cfg, a)?,
        crate::args::Command::Verify(a) => {
            let (text, passed) = verify(model_path, cli.format, &cfg, a)?;
            write_output(cli.out.as_deref(), &text)?;
            return if passed {
                Ok(())
            } else {
                Err(Failure::Check("verification failed".into()))
            };
        }
        crate::args::Command::Sample(a) => sample_cmd(model_path, cli.format, a)?,
    };
    write_output(cli.out.as_deref(), &text)
}

#[derive(Serialize)]
struct CurveRow {
    u: f64,
    x: f64,
    y: f64,
    orthant_prob_residual: f64,
}

#[derive(Serialize)]
struct CurveOut {
    p: f64,
    dir: bivrel::Direction,
    points: Vec<CurveRow>,
}

fn curve(
    model: Option<&Path>,
    format: Format,
    cfg: &NumericConfig,
    a: &CurveArgs,
) -> Outcome<String> {
    open_probability("p", a.p)?;
    if a.n < 2 {
        return Err(Failure::Usage(
            "a curve needs at least 2 points (-n)".into(),
        ));
    }
    let rows: Vec<CurveRow> = match &a.sample {
        Some(path) => {
            let s = load_sample(path)?;
            let grid = curve_grid(a.p, a.dir, a.n)?;
            empirical_curve(&s, a.p, a.dir, &grid)?
                .points
                .into_iter()
                .map(|pt| CurveRow {
                    u: pt.u,
                    x: pt.x,
                    y: pt.y,
                    orthant_prob_residual: (empirical_orthant_frequency(&s, a.dir, pt.x, pt.y)
                        - a.p)
                        .abs(),
                })
                .collect()
        }
        None => {
            let m = load_model(model)?;
            curve_points(&m, a.p, a.dir, a.n, cfg)?
                .points
                .into_iter()
                .map(|pt| CurveRow {
                    u: pt.u,
                    x: pt.x,
                    y: pt.y,
                    orthant_prob_residual: orthant_residual(&m, a.p, a.dir, pt.x, pt.y),
                })
                .collect()
        }
    };
    if let Some(path) = &a.svg {
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.x, r.y)).collect();
        let legend = format!("p = {}, direction {}", num(a.p), a.dir);
        let plot = svg::render(&svg::Plot {
            points: &points,
            x_label: "x",
            y_label: "y",
            legend: &legend,
        });
        write_output(Some(path), &plot)?;
    }
    Ok(match format {
        Format::Csv => csv(
            &["u", "x", "y", "orthant_prob_residual"],
            rows.iter()
                .map(|r| vec![num(r.u), num(r.x), num(r.y), num(r.orthant_prob_residual)]),
        ),
        Format::Json => to_json(&CurveOut {
            p: a.p,
            dir: a.dir,
            points: rows,
        }),
    })
}

fn field(
    model: Option<&Path>,
    format: Format,
    cfg: &NumericConfig,
    a: &FieldArgs,
) -> Outcome<String> {
    if a.grid == 0 {
        return Err(Failure::Usage("--grid must be at least 1".into()));
    }
    let m = load_model(model)?;
    let grid = interior_grid(a.grid);
    let mut rows = Vec::with_capacity(grid.len() * grid.len());
    for &u in &grid {
        for &p in &grid {
            rows.push(if a.interchanged {
                interchanged(&m, a.kind, u, p, cfg)?
            } else {
                reliability_vector(&m, a.kind, u, p, cfg)?
            });
        }
    }
    Ok(match format {
        Format::Csv => csv(
            &["u", "p_cond", "first", "second", "kind"],
            rows.iter().map(|r| {
                vec![
                    num(r.u),
                    num(r.p_cond),
                    num(r.first),
                    num(r.second),
                    r.kind.to_string(),
                ]
            }),
        ),
        Format::Json => to_json(&rows),
    })
}

/// Default evaluation range of the round trips for a kind.
pub fn default_range(kind: ReliabilityKind) -> (f64, f64) {
    match kind {
        ReliabilityKind::Hazard | ReliabilityKind::Mrl => (0.01, 0.95),
        ReliabilityKind::RevHazard | ReliabilityKind::RevMrl => (0.05, 0.99),
    }
}

fn reconstruct(
    model: Option<&Path>,
    format: Format,
    cfg: &NumericConfig,
    a: &ReconstructArgs,
) -> Outcome<String> {
    if a.grid == 0 {
        return Err(Failure::Usage("--grid must be at least 1".into()));
    }
    open_probability("anchor", a.anchor)?;
    let (lo, hi) = default_range(a.kind);
    let (lo, hi) = (a.from.unwrap_or(lo), a.to.unwrap_or(hi));
    open_probability("--from", lo)?;
    open_probability("--to", hi)?;
    if a.grid > 1 && !(lo < hi) {
        return Err(Failure::Usage("--from must be smaller than --to".into()));
    }
    let m = load_model(model)?;
    let rows = round_trip(
        &m,
        a.kind,
        a.component,
        a.anchor,
        &linear_grid(lo, hi, a.grid),
        cfg,
    )?;
    Ok(match format {
        Format::Csv => csv(
            &["t", "reconstructed", "reference", "abs_error"],
            rows.iter().map(|r| {
                vec![
                    num(r.t),
                    num(r.reconstructed),
                    num(r.reference),
                    num(r.abs_error),
                ]
            }),
        ),
        Format::Json => to_json(&rows),
    })
}

#[derive(Serialize)]
struct VerifyPoint {
    check: &'static str,
    component: Component,
    t: f64,
    residual: f64,
}

#[derive(Serialize)]
struct VerifySummary {
    check: &'static str,
    component: Component,
    max_residual: Option<f64>,
    tolerance: f64,
    passed: bool,
    error: Option<String>,
}

#[derive(Serialize)]
struct VerifyOut {
    points: Vec<VerifyPoint>,
    summary: Vec<VerifySummary>,
}

fn check_name(kind: ReliabilityKind) -> &'static str {
    match kind {
        ReliabilityKind::Hazard => "hazard-round-trip",
        ReliabilityKind::Mrl => "mrl-round-trip",
        ReliabilityKind::RevHazard => "rev-hazard-round-trip",
        ReliabilityKind::RevMrl => "rev-mrl-round-trip",
    }
}

/// Runs every check; the summary goes to standard error, one line each.
fn verify(
    model: Option<&Path>,
    format: Format,
    cfg: &NumericConfig,
    a: &VerifyArgs,
) -> Outcome<(String, bool)> {
    open_probability("anchor", a.anchor)?;
    let m = load_model(model)?;
    let mut points = Vec::new();
    let mut summary = Vec::new();
    let mut record = |check: &'static str,
                      component: Component,
                      tolerance: f64,
                      result: bivrel::Result<Vec<(f64, f64)>>| {
        let s = match result {
            Ok(rows) => {
                let max = rows.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
                points.extend(rows.into_iter().map(|(t, residual)| VerifyPoint {
                    check,
                    component,
                    t,
                    residual,
                }));
                VerifySummary {
                    check,
                    component,
                    max_residual: Some(max),
                    tolerance,
                    passed: max <= tolerance,
                    error: None,
                }
            }
            Err(e) => VerifySummary {
                check,
                component,
                max_residual: None,
                tolerance,
                passed: false,
                error: Some(e.to_string()),
            },
        };
        summary.push(s);
    };

    for component in Component::BOTH {
        for kind in ReliabilityKind::ALL {
            let (lo, hi) = default_range(kind);
            let result = round_trip(&m, kind, component, a.anchor, &linear_grid(lo, hi, 20), cfg)
                .map(|rows| rows.iter().map(|r| (r.t, r.abs_error)).collect());
            record(check_name(kind), component, ROUND_TRIP_TOL, result);
        }
        let result = interior_grid(33)
            .into_iter()
            .map(|t| {
                Ok((
                    t,
                    hazard_mrl_identity_residual(&m, component, a.anchor, t, cfg)?,
                ))
            })
            .collect();
        record("hazard-mrl-identity", component, IDENTITY_TOL, result);
    }

    for s in &summary {
        let line = match (&s.error, s.max_residual) {
            (Some(e), _) => format!("FAIL {} {}: error: {e}", s.check, s.component),
            (None, Some(max)) => format!(
                "{} {} {}: max residual {} (tolerance {})",
                if s.passed { "PASS" } else { "FAIL" },
                s.check,
                s.component,
                num(max),
                num(s.tolerance)
            ),
            (None, None) => unreachable!("summary without result"),
        };
        eprintln!("{line}");
    }
    let passed = summary.iter().all(|s| s.passed);
    let text = match format {
        Format::Csv => csv(
            &["check", "component", "t", "residual"],
            points.iter().map(|p| {
                vec![
                    p.check.to_string(),
                    p.component.to_string(),
                    num(p.t),
                    num(p.residual),
                ]
            }),
        ),
        Format::Json => to_json(&VerifyOut { points, summary }),
    };
    Ok((text, passed))
}

fn sample_cmd(model: Option<&Path>, format: Format, a: &SampleArgs) -> Outcome<String> {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let m = load_model(model)?;
    let s = sample(&m, a.n, a.seed)?;
    Ok(match format {
        Format::Csv => sample_csv(&s),
        Format::Json => to_json(&s),
    })
}
