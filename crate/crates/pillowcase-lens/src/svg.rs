//! Hand-assembled SVG figures.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use pillowcase::char_variety::ChartPoint;
use pillowcase::intersect::IntersectionReport;
use pillowcase::lagrangians::{sphere_chart, PerturbationConfig, SphereCoord};

use crate::report::curves;

const PANEL: f64 = 360.0;
const MARGIN: f64 = 40.0;

/// Maps a rectangle of parameter space onto a panel.
struct Panel {
    x0: f64,
    xs: (f64, f64),
    ys: (f64, f64),
    height: f64,
}

impl Panel {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let w = PANEL;
        let u = self.x0 + (x - self.xs.0) / (self.xs.1 - self.xs.0) * w;
        let v = MARGIN + self.height - (y - self.ys.0) / (self.ys.1 - self.ys.0) * self.height;
        (u, v)
    }

    fn frame(&self, out: &mut String, title: &str, xlabel: &str, ylabel: &str) {
        let (x, y) = (self.x0, MARGIN);
        let _ = writeln!(
            out,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{PANEL:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
            self.height
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{title}</text>"#,
            x + PANEL / 2.0,
            y - 12.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{xlabel}</text>"#,
            x + PANEL / 2.0,
            y + self.height + 28.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{ylabel}</text>"#,
            x - 18.0,
            y + self.height / 2.0,
            x - 18.0,
            y + self.height / 2.0
        );
    }

    /// Polyline broken wherever consecutive samples jump by more than `gap`.
    fn curve(&self, out: &mut String, pts: &[(f64, f64)], gap: f64, style: &str) {
        let mut run: Vec<(f64, f64)> = Vec::new();
        let flush = |run: &mut Vec<(f64, f64)>, out: &mut String| {
            if run.len() > 1 {
                let coords: Vec<String> = run
                    .iter()
                    .map(|&(x, y)| {
                        let (u, v) = self.px(x, y);
                        format!("{u:.2},{v:.2}")
                    })
                    .collect();
                let _ = writeln!(out, r#"<polyline points="{}" fill="none" {style}/>"#, coords.join(" "));
            }
            run.clear();
        };
        for &p in pts {
            if let Some(&q) = run.last() {
                if (p.0 - q.0).abs() > gap || (p.1 - q.1).abs() > gap {
                    flush(&mut run, out);
                }
            }
            run.push(p);
        }
        flush(&mut run, out);
    }

    fn dot(&self, out: &mut String, x: f64, y: f64, label: &str) {
        let (u, v) = self.px(x, y);
        let _ = writeln!(out, r#"<circle cx="{u:.2}" cy="{v:.2}" r="4" fill="crimson"/>"#);
        if !label.is_empty() {
            let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="10">{label}</text>"#, u + 6.0, v - 6.0);
        }
    }
}

fn header(width: f64, height: f64, reproducible: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    if !reproducible {
        let t = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let _ = writeln!(s, "<!-- generated at unix time {t} -->");
    }
    s
}

fn pillowcase_panel(out: &mut String, pert: PerturbationConfig, x0: f64) -> Panel {
    let panel = Panel { x0, xs: (0.0, TAU), ys: (0.0, PI), height: PANEL / 2.0 };
    panel.frame(out, "pillowcase P3", "alpha", "beta");
    for (name, pts) in curves(pert, 401) {
        let style = if name == "ld" {
            r#"stroke="steelblue" stroke-width="2""#
        } else {
            r#"stroke="darkorange" stroke-width="1.5""#
        };
        panel.curve(out, &pts, PI, style);
    }
    panel
}

fn angle(v: [f64; 3]) -> f64 {
    v[1].atan2(v[0])
}

/// Both Lagrangian figures share the pillowcase panel.
pub fn lagrangian_figure(pert: PerturbationConfig, reproducible: bool) -> String {
    let mut s = header(PANEL + 2.0 * MARGIN, PANEL / 2.0 + 2.0 * MARGIN + 10.0, reproducible);
    pillowcase_panel(&mut s, pert, MARGIN);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="10">epsilon = {}</text>"#,
        MARGIN,
        PANEL / 2.0 + 2.0 * MARGIN,
        pert.epsilon
    );
    s.push_str("</svg>\n");
    s
}

/// Intersection points in the pillowcase and in the `(angle â, angle b̂)` torus.
pub fn intersection_figure(rep: &IntersectionReport, pert: PerturbationConfig, reproducible: bool) -> String {
    let width = 2.0 * PANEL + 3.0 * MARGIN;
    let mut s = header(width, PANEL + 2.0 * MARGIN + 10.0, reproducible);
    let left = pillowcase_panel(&mut s, pert, MARGIN);
    let right = Panel { x0: PANEL + 2.0 * MARGIN, xs: (-PI, PI), ys: (-PI, PI), height: PANEL };
    right.frame(&mut s, "P4 equator angles", "angle(a)", "angle(b)");

    // the diagonal â = -b̂ shows up as angle(b̂) = angle(â) ± π
    let diag: Vec<(f64, f64)> = (0..=200)
        .map(|k| {
            let x = -PI + TAU * k as f64 / 200.0;
            (x, (x + PI + PI).rem_euclid(TAU) - PI)
        })
        .collect();
    right.curve(&mut s, &diag, PI, r#"stroke="gray" stroke-dasharray="4 3""#);

    // L_s over the equator θ = π/2, 3π/2, where â and b̂ both lie in the xy-plane
    for theta in [PI / 2.0, 1.5 * PI] {
        let pts: Vec<(f64, f64)> = (1..400)
            .filter_map(|k| {
                let c = SphereCoord::new(PI * k as f64 / 400.0, theta);
                match sphere_chart(c, pert) {
                    ChartPoint::P4 { a_hat, neg_b_hat } => {
                        Some((angle(a_hat.to_array()), angle(neg_b_hat.neg().to_array())))
                    }
                    ChartPoint::P3 { .. } => None,
                }
            })
            .collect();
        right.curve(&mut s, &pts, PI, r#"stroke="darkorange" stroke-width="1.5""#);
    }

    for (i, p) in rep.points.iter().enumerate() {
        let label = format!("{}", i + 1);
        match &p.chart {
            ChartPoint::P3 { alpha, beta, .. } => left.dot(&mut s, *alpha, *beta, &label),
            c @ ChartPoint::P4 { a_hat, .. } => {
                if let Some(b) = c.b_hat() {
                    right.dot(&mut s, angle(a_hat.to_array()), angle(b.to_array()), &label);
                }
            }
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="10">{} ; epsilon = {} ; count = {}</text>"#,
        MARGIN,
        PANEL + 2.0 * MARGIN,
        xml_escape(&rep.provenance.word),
        pert.epsilon,
        rep.count
    );
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
