//! Minimal deterministic SVG charts: log-log CCDFs and linear plots with
//! error bars.

use std::fmt::Write as _;

use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#9467bd", "#2ca02c", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Optional `(lo, hi)` per point.
    pub error_bars: Option<Vec<(f64, f64)>>,
    /// Draw as a step function (CCDF) instead of a polyline with markers.
    pub steps: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub series: Vec<Series>,
}

struct Axis {
    scale: Scale,
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn fit(scale: Scale, values: impl Iterator<Item = f64>, px_lo: f64, px_hi: f64) -> Result<Self> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            if scale == Scale::Log && v <= 0.0 {
                continue;
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::validation("nothing to plot"));
        }
        match scale {
            Scale::Log => {
                lo = 10f64.powf(lo.log10().floor());
                hi = 10f64.powf(hi.log10().ceil());
                if lo == hi {
                    hi = lo * 10.0;
                }
            }
            Scale::Linear => {
                let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5f64.max(hi.abs() * 0.1) };
                lo -= pad;
                hi += pad;
            }
        }
        Ok(Axis { scale, lo, hi, px_lo, px_hi })
    }

    fn map(&self, v: f64) -> f64 {
        let t = match self.scale {
            Scale::Linear => (v - self.lo) / (self.hi - self.lo),
            Scale::Log => (v.max(self.lo).log10() - self.lo.log10()) / (self.hi.log10() - self.lo.log10()),
        };
        self.px_lo + t * (self.px_hi - self.px_lo)
    }

    fn ticks(&self) -> Vec<f64> {
        match self.scale {
            Scale::Log => {
                let (a, b) = (self.lo.log10().round() as i32, self.hi.log10().round() as i32);
                (a..=b).map(|e| 10f64.powi(e)).collect()
            }
            Scale::Linear => {
                let raw = (self.hi - self.lo) / 6.0;
                let mag = 10f64.powf(raw.log10().floor());
                let step = [1.0, 2.0, 5.0, 10.0]
                    .into_iter()
                    .map(|m| m * mag)
                    .find(|s| *s >= raw)
                    .unwrap_or(10.0 * mag);
                let first = (self.lo / step).ceil() as i64;
                let last = (self.hi / step).floor() as i64;
                (first..=last).map(|i| i as f64 * step).collect()
            }
        }
    }
}

fn fmt_tick(v: f64, scale: Scale) -> String {
    match scale {
        Scale::Log => format!("1e{}", v.log10().round() as i32),
        Scale::Linear => {
            let s = format!("{v:.3}");
            let s = s.trim_end_matches('0').trim_end_matches('.');
            if s == "-0" { "0".to_string() } else { s.to_string() }
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_svg(chart: &Chart) -> Result<String> {
    if chart.series.is_empty() {
        return Err(Error::validation("chart has no series"));
    }
    let xs = chart.series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let ys = chart.series.iter().flat_map(|s| {
        let bars = s.error_bars.iter().flatten().flat_map(|&(lo, hi)| [lo, hi]);
        s.points.iter().map(|p| p.1).chain(bars)
    });
    let x = Axis::fit(chart.x_scale, xs, LEFT, WIDTH - RIGHT)?;
    let y = Axis::fit(chart.y_scale, ys, HEIGHT - BOTTOM, TOP)?;

    let mut svg = String::new();
    let w = &mut svg;
    writeln!(w, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(w, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(&chart.title)).unwrap();
    writeln!(
        w,
        r##"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="#333"/>"##,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    )
    .unwrap();
    for t in x.ticks() {
        let px = x.map(t);
        writeln!(w, r##"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{TOP}" stroke="#ddd"/>"##, HEIGHT - BOTTOM).unwrap();
        writeln!(w, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, HEIGHT - BOTTOM + 16.0, fmt_tick(t, x.scale)).unwrap();
    }
    for t in y.ticks() {
        let py = y.map(t);
        writeln!(w, r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#ddd"/>"##, WIDTH - RIGHT).unwrap();
        writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 6.0, py + 4.0, fmt_tick(t, y.scale)).unwrap();
    }
    writeln!(w, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (LEFT + WIDTH - RIGHT) / 2.0, HEIGHT - 18.0, escape(&chart.x_label)).unwrap();
    writeln!(
        w,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        escape(&chart.y_label)
    )
    .unwrap();

    for (i, s) in chart.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let visible: Vec<(f64, f64)> = s
            .points
            .iter()
            .copied()
            .filter(|&(px, py)| {
                (x.scale == Scale::Linear || px > 0.0) && (y.scale == Scale::Linear || py > 0.0)
            })
            .collect();
        let mut path = String::new();
        for (j, &(px, py)) in visible.iter().enumerate() {
            let (sx, sy) = (x.map(px), y.map(py));
            if j == 0 {
                write!(path, "M{sx:.2},{sy:.2}").unwrap();
            } else if s.steps {
                // hold the previous level until the next x
                let prev = y.map(visible[j - 1].1);
                write!(path, " L{sx:.2},{prev:.2} L{sx:.2},{sy:.2}").unwrap();
            } else {
                write!(path, " L{sx:.2},{sy:.2}").unwrap();
            }
        }
        writeln!(w, r#"<path d="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>"#).unwrap();
        if !s.steps {
            for &(px, py) in &visible {
                writeln!(w, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, x.map(px), y.map(py)).unwrap();
            }
        }
        if let Some(bars) = &s.error_bars {
            for (&(px, _), &(lo, hi)) in s.points.iter().zip(bars) {
                let sx = x.map(px);
                let (slo, shi) = (y.map(lo), y.map(hi));
                writeln!(w, r#"<line x1="{sx:.2}" y1="{slo:.2}" x2="{sx:.2}" y2="{shi:.2}" stroke="{color}"/>"#).unwrap();
                for cap in [slo, shi] {
                    writeln!(w, r#"<line x1="{:.2}" y1="{cap:.2}" x2="{:.2}" y2="{cap:.2}" stroke="{color}"/>"#, sx - 4.0, sx + 4.0).unwrap();
                }
            }
        }
        let ly = TOP + 16.0 + 16.0 * i as f64;
        let lx = WIDTH - RIGHT - 150.0;
        writeln!(w, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0).unwrap();
        writeln!(w, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&s.label)).unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
