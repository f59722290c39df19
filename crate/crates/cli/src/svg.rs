//! Minimal self-contained SVG charts: inline styles, fixed-precision
//! coordinates, no external assets, byte-deterministic for fixed inputs.

use std::collections::BTreeSet;
use std::fmt::Write;

pub const GAIN_COLOR: &str = "#d62728";
pub const LOSS_COLOR: &str = "#1f77b4";
pub const TRACE_COLOR: &str = "#222222";
pub const POINT_COLOR: &str = "#111111";

/// Maps a data window onto pixel coordinates with a fixed margin.
pub struct Frame {
    width: f64,
    height: f64,
    margin: f64,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    /// Builds a frame around the data ranges, padded by 5% on each side.
    pub fn around(width: u32, height: u32, x: (f64, f64), y: (f64, f64)) -> Self {
        Self {
            width: width as f64,
            height: height as f64,
            margin: 40.0,
            x: pad(x),
            y: pad(y),
        }
    }

    fn px(&self, x: f64) -> f64 {
        self.margin + (x - self.x.0) / (self.x.1 - self.x.0) * (self.width - 2.0 * self.margin)
    }

    fn py(&self, y: f64) -> f64 {
        self.height
            - self.margin
            - (y - self.y.0) / (self.y.1 - self.y.0) * (self.height - 2.0 * self.margin)
    }
}

fn pad((lo, hi): (f64, f64)) -> (f64, f64) {
    let span = hi - lo;
    if span <= 0.0 || !span.is_finite() {
        let pad = lo.abs().max(1.0) * 0.05;
        return (lo - pad, hi + pad);
    }
    (lo - 0.05 * span, hi + 0.05 * span)
}

pub struct SvgDoc {
    frame: Frame,
    body: String,
}

impl SvgDoc {
    pub fn new(frame: Frame) -> Self {
        let mut body = String::new();
        let _ = write!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = frame.width,
            h = frame.height
        );
        let _ = write!(
            body,
            r#"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"#,
            w = frame.width,
            h = frame.height
        );
        Self { frame, body }
    }

    /// Plot border; tick marks and numeric labels only when `labels` is set.
    pub fn axes(&mut self, labels: bool, x_name: &str, y_name: &str) {
        let f = &self.frame;
        let (x0, y0) = (f.margin, f.height - f.margin);
        let (x1, y1) = (f.width - f.margin, f.margin);
        let _ = write!(
            self.body,
            r#"<rect x="{x0:.2}" y="{y1:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="#444444" stroke-width="1"/>"#,
            w = x1 - x0,
            h = y0 - y1
        );
        if !labels {
            return;
        }
        for i in 0..=4 {
            let t = i as f64 / 4.0;
            let xv = f.x.0 + t * (f.x.1 - f.x.0);
            let yv = f.y.0 + t * (f.y.1 - f.y.0);
            let px = f.px(xv);
            let py = f.py(yv);
            let _ = write!(
                self.body,
                r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{t2:.2}" stroke="#444444" stroke-width="1"/>"#,
                t2 = y0 + 5.0
            );
            let _ = write!(
                self.body,
                r#"<text x="{px:.2}" y="{ty:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{label}</text>"#,
                ty = y0 + 16.0,
                label = tick_label(xv)
            );
            let _ = write!(
                self.body,
                r#"<line x1="{x0:.2}" y1="{py:.2}" x2="{t2:.2}" y2="{py:.2}" stroke="#444444" stroke-width="1"/>"#,
                t2 = x0 - 5.0
            );
            let _ = write!(
                self.body,
                r#"<text x="{tx:.2}" y="{py2:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{label}</text>"#,
                tx = x0 - 7.0,
                py2 = py + 3.0,
                label = tick_label(yv)
            );
        }
        let _ = write!(
            self.body,
            r#"<text x="{cx:.2}" y="{by:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{x_name}</text>"#,
            cx = 0.5 * (x0 + x1),
            by = f.height - 8.0
        );
        let _ = write!(
            self.body,
            r#"<text x="12" y="{cy:.2}" font-family="sans-serif" font-size="11" text-anchor="middle" transform="rotate(-90 12 {cy:.2})">{y_name}</text>"#,
            cy = 0.5 * (y0 + y1)
        );
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, width: f64, dashed: bool) {
        if points.is_empty() {
            return;
        }
        let f = &self.frame;
        let mut attr = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let sep = if i == 0 { "" } else { " " };
            let _ = write!(attr, "{sep}{:.2},{:.2}", f.px(x), f.py(y));
        }
        let dash = if dashed { r#" stroke-dasharray="6,4""# } else { "" };
        let _ = write!(
            self.body,
            r#"<polyline points="{attr}" fill="none" stroke="{stroke}" stroke-width="{width}"{dash}/>"#
        );
    }

    /// One path of unit dots, deduplicated on a tenth-pixel grid so dense
    /// attractor bands stay compact.
    pub fn dots(&mut self, points: impl Iterator<Item = (f64, f64)>, fill: &str) {
        let f = &self.frame;
        let mut cells: BTreeSet<(i64, i64)> = BTreeSet::new();
        for (x, y) in points {
            if !x.is_finite() || !y.is_finite() {
                continue;
            }
            cells.insert(((f.px(x) * 10.0).round() as i64, (f.py(y) * 10.0).round() as i64));
        }
        if cells.is_empty() {
            return;
        }
        let mut d = String::new();
        for (cx, cy) in cells {
            let _ = write!(d, "M{:.1} {:.1}h0.7", cx as f64 / 10.0, cy as f64 / 10.0);
        }
        let _ = write!(
            self.body,
            r#"<path d="{d}" stroke="{fill}" stroke-width="0.7" fill="none"/>"#
        );
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e4).contains(&a) {
        format!("{v:.4}")
    } else {
        format!("{v:.3e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_is_deterministic_and_self_contained() {
        let build = || {
            let mut doc = SvgDoc::new(Frame::around(400, 300, (0.0, 1.0), (0.0, 2.0)));
            doc.axes(true, "x", "y");
            doc.polyline(&[(0.0, 0.0), (0.5, 1.7), (1.0, 0.3)], GAIN_COLOR, 1.5, false);
            doc.dots([(0.25, 0.5), (0.75, 1.5)].into_iter(), POINT_COLOR);
            doc.finish()
        };
        let a = build();
        let b = build();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(!a.contains("http://"), "no external references beyond the namespace");
    }

    #[test]
    fn degenerate_ranges_are_widened() {
        let frame = Frame::around(100, 100, (0.5, 0.5), (0.0, 1.0));
        assert!(frame.x.0 < 0.5 && frame.x.1 > 0.5);
    }
}
