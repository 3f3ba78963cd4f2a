//! SVG rendering of a chamber map.
//!
//! Densities are filled on a diverging scale (blue negative, red positive,
//! white zero) and printed exactly at the representative points. The
//! y-axis points up, as in the usual picture of the plane.

use std::fmt::Write as _;
use std::path::Path;

use super::{ChamberMap, Point};
use crate::error::{Error, Result};
use crate::exact::Rat;

struct Frame {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn of(cm: &ChamberMap) -> Frame {
        let xs: Vec<f64> = cm.hull.iter().map(|p| p[0].to_f64()).collect();
        let ys: Vec<f64> = cm.hull.iter().map(|p| p[1].to_f64()).collect();
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
        let (x0, x1) = (
            fold(&xs, f64::min, f64::INFINITY),
            fold(&xs, f64::max, f64::NEG_INFINITY),
        );
        let (y0, y1) = (
            fold(&ys, f64::min, f64::INFINITY),
            fold(&ys, f64::max, f64::NEG_INFINITY),
        );
        let mx = ((x1 - x0) * 0.05).max(1e-9);
        let my = ((y1 - y0) * 0.05).max(1e-9);
        Frame {
            min_x: x0 - mx,
            max_y: y1 + my,
            width: x1 - x0 + 2.0 * mx,
            height: y1 - y0 + 2.0 * my,
        }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        (p[0].to_f64() - self.min_x, self.max_y - p[1].to_f64())
    }
}

fn fill_color(value: &Rat, max_abs: f64) -> String {
    if max_abs == 0.0 || value.is_zero() {
        return "#ffffff".into();
    }
    let t = (value.to_f64().abs() / max_abs).min(1.0);
    let fade = (255.0 * (1.0 - 0.75 * t)).round() as u8;
    if value.is_positive() {
        format!("#ff{fade:02x}{fade:02x}")
    } else {
        format!("#{fade:02x}{fade:02x}ff")
    }
}

fn points_attr(frame: &Frame, poly: &[Point]) -> String {
    poly.iter()
        .map(|p| {
            let (x, y) = frame.map(p);
            format!("{x:.4},{y:.4}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The SVG document. Chambers without densities, or a map whose densities
/// are all zero, are drawn as outlines only.
pub fn render_svg(cm: &ChamberMap) -> String {
    let frame = Frame::of(cm);
    let unit = frame.width.max(frame.height);
    let stroke = unit * 0.004;
    let font = unit * 0.035;
    let max_abs = cm
        .chambers
        .iter()
        .filter_map(|c| c.density.as_ref().map(|d| d.to_f64().abs()))
        .fold(0.0, f64::max);
    let labelled = max_abs > 0.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {:.4} {:.4}" width="600" height="{:.0}">"#,
        frame.width,
        frame.height,
        600.0 * frame.height / frame.width
    );
    let _ = writeln!(
        s,
        r##"<g stroke="#333333" stroke-width="{stroke:.4}" stroke-linejoin="round">"##
    );
    for c in &cm.chambers {
        let fill = match (&c.density, labelled) {
            (Some(d), true) => fill_color(d, max_abs),
            _ => "none".into(),
        };
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{fill}"/>"#,
            points_attr(&frame, &c.polygon)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="none" stroke="#000000" stroke-width="{:.4}"/>"##,
        points_attr(&frame, &cm.hull),
        stroke * 2.0
    );
    if labelled {
        let _ = writeln!(
            s,
            r#"<g font-family="sans-serif" font-size="{font:.4}" text-anchor="middle" dominant-baseline="middle">"#
        );
        for c in &cm.chambers {
            if let Some(d) = &c.density {
                let (x, y) = frame.map(&c.point);
                let _ = writeln!(s, r#"<text x="{x:.4}" y="{y:.4}">{d}</text>"#);
            }
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(
        s,
        r##"<g font-family="sans-serif" font-size="{font:.4}" fill="#000000">"##
    );
    for (i, v) in cm.vertices.iter().enumerate() {
        let (x, y) = frame.map(v);
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.4}" cy="{y:.4}" r="{:.4}"/>"#,
            stroke * 2.5
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.4}" y="{:.4}">v{i}</text>"#,
            x + font * 0.3,
            y - font * 0.3
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

/// Writes [`render_svg`] to `path`.
pub fn emit_svg(cm: &ChamberMap, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(cm))
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}
