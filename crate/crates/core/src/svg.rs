//! Static SVG renderings of the FDC scatter, locality box plots and
//! neutrality box plots on a fixed 800x600 canvas.
//!
//! Axes and tick marks are drawn with `<rect>`/`<path>`, so `<circle>` and
//! `<line>` elements are reserved for data points and reference lines.

use std::fmt::Write as _;

use crate::analyses::{FdcResult, FitnessBinning, LocalityProfile, NeutralityProfile};
use crate::stats::BoxStats;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const TICKS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Fdc,
    Locality,
    Neutrality,
}

impl PlotKind {
    pub fn file_name(self) -> &'static str {
        match self {
            PlotKind::Fdc => "fdc.svg",
            PlotKind::Locality => "locality.svg",
            PlotKind::Neutrality => "neutrality.svg",
        }
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        let widen = |lo: f64, hi: f64| if hi > lo { (lo, hi) } else { (lo - 1.0, lo + 1.0) };
        let (x0, x1) = widen(x0, x1);
        let (y0, y1) = widen(y0, y1);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn c(v: f64) -> String {
    format!("{v:.2}")
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(out: &mut String, title: &str, x_label: &str, y_label: &str, frame: &Frame) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH,
        h = HEIGHT
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        c(LEFT),
        c(TOP),
        c(WIDTH - LEFT - RIGHT),
        c(HEIGHT - TOP - BOTTOM)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="16">{}</text>"#,
        c(WIDTH / 2.0),
        c(TOP / 2.0 + 6.0),
        escape(title)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        c(LEFT + (WIDTH - LEFT - RIGHT) / 2.0),
        c(HEIGHT - 20.0),
        escape(x_label)
    )
    .unwrap();
    let (yx, yy) = (20.0, TOP + (HEIGHT - TOP - BOTTOM) / 2.0);
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" transform="rotate(-90 {} {})">{}</text>"#,
        c(yx),
        c(yy),
        c(yx),
        c(yy),
        escape(y_label)
    )
    .unwrap();

    let mut ticks = String::new();
    for k in 0..=TICKS {
        let t = k as f64 / TICKS as f64;
        let xv = frame.x0 + t * (frame.x1 - frame.x0);
        let yv = frame.y0 + t * (frame.y1 - frame.y0);
        let (px, py) = (frame.px(xv), frame.py(yv));
        write!(
            ticks,
            "M{} {}v5M{} {}h-5",
            c(px),
            c(HEIGHT - BOTTOM),
            c(LEFT),
            c(py)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            c(px),
            c(HEIGHT - BOTTOM + 18.0),
            tick_label(xv)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            c(LEFT - 8.0),
            c(py + 4.0),
            tick_label(yv)
        )
        .unwrap();
    }
    writeln!(out, r#"<path d="{ticks}" stroke="black" fill="none"/>"#).unwrap();
}

fn close(out: &mut String) {
    out.push_str("</svg>\n");
}

fn box_glyph(out: &mut String, frame: &Frame, x: f64, half_width: f64, b: &BoxStats) {
    let (l, r) = (frame.px(x - half_width), frame.px(x + half_width));
    let mid = frame.px(x);
    writeln!(
        out,
        r#"<path d="M{} {}V{}M{} {}H{}M{} {}H{}" stroke="black" fill="none"/>"#,
        c(mid),
        c(frame.py(b.min)),
        c(frame.py(b.max)),
        c(l),
        c(frame.py(b.min)),
        c(r),
        c(l),
        c(frame.py(b.max)),
        c(r)
    )
    .unwrap();
    let (top, bottom) = (frame.py(b.q3), frame.py(b.q1));
    writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#9ecae1" stroke="black"/>"##,
        c(l),
        c(top),
        c(r - l),
        c(bottom - top)
    )
    .unwrap();
    writeln!(
        out,
        r##"<path d="M{} {}H{}" stroke="#d62728" stroke-width="2" fill="none"/>"##,
        c(l),
        c(frame.py(b.median)),
        c(r)
    )
    .unwrap();
}

/// Scatter of (distance to optimum, fitness) with the least-squares line.
pub fn fdc_svg(fdc: &FdcResult) -> String {
    let max_d = fdc.points.iter().map(|p| p.0).fold(0.0, f64::max);
    let min_f = fdc.points.iter().map(|p| p.1).fold(0.0, f64::min);
    let max_f = fdc.points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let frame = Frame::new(0.0, max_d, min_f, max_f);
    let mut out = String::new();
    open(&mut out, "Fitness vs. distance to optimum", "distance to optimum", "fitness", &frame);
    for &(d, f) in &fdc.points {
        writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="2.5" fill="#555555" fill-opacity="0.6"/>"##,
            c(frame.px(d)),
            c(frame.py(f))
        )
        .unwrap();
    }
    if let (Some(slope), Some(intercept)) = (fdc.slope, fdc.intercept) {
        let (xa, xb) = (frame.x0, frame.x1);
        writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f77b4" stroke-width="2"/>"##,
            c(frame.px(xa)),
            c(frame.py(intercept + slope * xa)),
            c(frame.px(xb)),
            c(frame.py(intercept + slope * xb))
        )
        .unwrap();
    }
    close(&mut out);
    out
}

/// Box plots of mean neighbor fitness per fitness bin, with the bisector.
pub fn locality_svg(locality: &LocalityProfile, binning: &FitnessBinning) -> String {
    let frame = Frame::new(0.0, binning.max_fitness, 0.0, binning.max_fitness);
    let mut out = String::new();
    open(&mut out, "Mean neighbor fitness vs. fitness", "fitness", "mean neighbor fitness", &frame);
    writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-dasharray="8 3 2 3"/>"#,
        c(frame.px(0.0)),
        c(frame.py(0.0)),
        c(frame.px(binning.max_fitness)),
        c(frame.py(binning.max_fitness))
    )
    .unwrap();
    for (k, b) in locality.bins.iter().enumerate() {
        if let Some(b) = b {
            box_glyph(&mut out, &frame, binning.center(k), 0.35 * binning.step, b);
        }
    }
    close(&mut out);
    out
}

/// Box plots of neutrality degree per fitness bin.
pub fn neutrality_svg(neutrality: &NeutralityProfile, binning: &FitnessBinning) -> String {
    let max_nd = neutrality.degrees.iter().copied().max().unwrap_or(0).max(1) as f64;
    let frame = Frame::new(0.0, binning.max_fitness, 0.0, max_nd);
    let mut out = String::new();
    open(&mut out, "Neutrality degree vs. fitness", "fitness", "neutrality degree", &frame);
    for (k, b) in neutrality.bins.iter().enumerate() {
        if let Some(b) = b {
            box_glyph(&mut out, &frame, binning.center(k), 0.35 * binning.step, b);
        }
    }
    close(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(svg: &str, tag: &str) -> usize {
        svg.matches(&format!("<{tag} ")).count()
    }

    #[test]
    fn fdc_three_points_one_line() {
        let fdc = FdcResult {
            points: vec![(0.0, 100.0), (0.5, 50.0), (1.0, 0.0)],
            slope: Some(-100.0),
            intercept: Some(100.0),
            coefficient: Some(-1.0),
        };
        let svg = fdc_svg(&fdc);
        assert_eq!(count(&svg, "circle"), 3);
        assert_eq!(count(&svg, "line"), 1);
        assert_eq!(svg, fdc_svg(&fdc));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn locality_bisector_spans_corners() {
        let binning = FitnessBinning { max_fitness: 100.0, step: 2.5, c_const: 40 };
        let mut bins = vec![None; 40];
        bins[10] = BoxStats::from_values(vec![20.0, 25.0, 30.0]);
        let loc = LocalityProfile { rows: vec![], bins, excluded_empty: 0, correlation: None };
        let svg = locality_svg(&loc, &binning);
        assert_eq!(count(&svg, "line"), 1);
        let frame = Frame::new(0.0, 100.0, 0.0, 100.0);
        let expect = format!(
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}""#,
            c(LEFT),
            c(HEIGHT - BOTTOM),
            c(WIDTH - RIGHT),
            c(TOP)
        );
        assert_eq!(frame.px(100.0), WIDTH - RIGHT);
        assert!(svg.contains(&expect), "{svg}");
        // one filled box per nonempty bin (plus the two frame rects)
        assert_eq!(count(&svg, "rect"), 3);
    }

    #[test]
    fn neutrality_boxes() {
        let binning = FitnessBinning { max_fitness: 80.0, step: 2.0, c_const: 40 };
        let mut bins = vec![None; 40];
        bins[0] = BoxStats::from_values(vec![0.0, 1.0]);
        bins[39] = BoxStats::from_values(vec![3.0]);
        let nt = NeutralityProfile {
            epsilon: 2.0,
            degrees: vec![0, 1, 3],
            neighbor_counts: vec![1, 1, 4],
            bins,
            mean_degree: 4.0 / 3.0,
        };
        let svg = neutrality_svg(&nt, &binning);
        assert_eq!(count(&svg, "rect"), 4);
        assert_eq!(count(&svg, "line"), 0);
    }
}
