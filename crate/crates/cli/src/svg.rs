//! Hand-written SVG plot of one curve.
//!
//! An 800x600 canvas holds the axes and labels in pixel units; the curve is
//! drawn in an inner viewport whose viewBox is the data bounding box plus a
//! 5% margin, so polyline points are data coordinates (y flipped by a group
//! transform).

use std::fmt::Write;

use crate::format::num;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

pub struct Plot<'a> {
    pub points: &'a [(f64, f64)],
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub legend: &'a str,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let span = if hi > lo { hi - lo } else { lo.abs().max(1.0) };
    (lo - 0.05 * span, hi + 0.05 * span)
}

pub fn render(plot: &Plot) -> String {
    let (x0, x1) = bounds(plot.points.iter().map(|p| p.0));
    let (y0, y1) = bounds(plot.points.iter().map(|p| p.1));
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"  <text x="{}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(plot.legend)
    );
    let _ = writeln!(
        s,
        r#"  <svg x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" viewBox="{} {} {} {}" preserveAspectRatio="none">"#,
        num(x0),
        num(-y1),
        num(x1 - x0),
        num(y1 - y0)
    );
    let _ = writeln!(s, r#"    <g transform="scale(1,-1)">"#);
    let pts: Vec<String> = plot
        .points
        .iter()
        .map(|&(x, y)| format!("{},{}", num(x), num(y)))
        .collect();
    let _ = writeln!(
        s,
        r#"      <polyline fill="none" stroke="steelblue" stroke-width="2" vector-effect="non-scaling-stroke" points="{}"/>"#,
        pts.join(" ")
    );
    let _ = writeln!(s, "    </g>");
    let _ = writeln!(s, "  </svg>");

    // Axes frame and end-point tick labels in pixel units.
    let (ax, ay) = (LEFT, TOP + ph);
    let _ = writeln!(
        s,
        r#"  <rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    let tick = |s: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        let _ = writeln!(
            s,
            r#"  <text x="{x}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{text}</text>"#
        );
    };
    tick(&mut s, ax, ay + 18.0, "start", num(x0));
    tick(&mut s, ax + pw, ay + 18.0, "end", num(x1));
    tick(&mut s, ax - 6.0, ay, "end", num(y0));
    tick(&mut s, ax - 6.0, TOP + 12.0, "end", num(y1));
    let _ = writeln!(
        s,
        r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0,
        escape(plot.x_label)
    );
    let _ = writeln!(
        s,
        r#"  <text x="20" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(plot.y_label)
    );
    s.push_str("</svg>\n");
    s
}
