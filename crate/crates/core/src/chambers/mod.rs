//! Chambers of a planar vertex set.
//!
//! The convex hull of the points is cut by every line through two distinct
//! points. Every cell of the result is convex and lies on one side of each
//! line, so a weighted sum of triangle indicators is constant on it.

mod svg;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::geometry::{VertexSet, WeightedMeasure};
use crate::inverse::Reconstruction;

pub use svg::{emit_svg, render_svg};

/// A planar point with exact coordinates.
pub type Point = [Rat; 2];

/// The line `a x + b y + c = 0`, scaled so the first nonzero of `(a, b)` is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Line {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Line {
    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Line {
        let a = &q[1] - &p[1];
        let b = &p[0] - &q[0];
        let c = -(&a * &p[0] + &b * &p[1]);
        let lead = if a.is_zero() { b.clone() } else { a.clone() };
        Line {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
        }
    }

    pub fn eval(&self, p: &Point) -> Rat {
        &self.a * &p[0] + &self.b * &p[1] + &self.c
    }
}

/// One cell with its vertex cycle (counterclockwise, starting at the
/// lexicographically smallest vertex) and representative interior point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub polygon: Vec<Point>,
    pub point: Point,
    /// Unset until densities are assigned.
    pub density: Option<Rat>,
}

impl Chamber {
    pub fn area(&self) -> Rat {
        polygon_area(&self.polygon)
    }

    /// Whether `p` lies in the closed cell.
    pub fn contains(&self, p: &Point) -> bool {
        let n = self.polygon.len();
        (0..n).all(|i| !cross(&self.polygon[i], &self.polygon[(i + 1) % n], p).is_negative())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberMap {
    /// Boundary of the convex hull, counterclockwise.
    pub hull: Vec<Point>,
    pub lines: Vec<Line>,
    pub chambers: Vec<Chamber>,
    /// Input points, for labelling.
    pub vertices: Vec<Point>,
}

impl ChamberMap {
    /// The chamber whose closed region contains `p`, if any; the first in
    /// the canonical order when `p` is on a boundary.
    pub fn locate(&self, p: &Point) -> Option<&Chamber> {
        self.chambers.iter().find(|c| c.contains(p))
    }

    /// `sum area * density` over chambers with assigned densities.
    pub fn total_mass(&self) -> Rat {
        self.chambers
            .iter()
            .filter_map(|c| c.density.as_ref().map(|d| c.area() * d))
            .sum()
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn polygon_area(poly: &[Point]) -> Rat {
    let n = poly.len();
    let twice: Rat = (0..n)
        .map(|i| {
            let (p, q) = (&poly[i], &poly[(i + 1) % n]);
            &p[0] * &q[1] - &q[0] * &p[1]
        })
        .sum();
    twice / Rat::from_int(2)
}

fn lex(p: &Point, q: &Point) -> Ordering {
    p[0].cmp(&q[0]).then_with(|| p[1].cmp(&q[1]))
}

/// Counterclockwise hull without collinear boundary points.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(lex);
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Splits a convex polygon by a line; `None` when the line does not cross
/// its interior.
fn split(poly: &[Point], line: &Line) -> Option<(Vec<Point>, Vec<Point>)> {
    let vals: Vec<Rat> = poly.iter().map(|p| line.eval(p)).collect();
    if !vals.iter().any(Rat::is_positive) || !vals.iter().any(Rat::is_negative) {
        return None;
    }
    let n = poly.len();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for i in 0..n {
        let j = (i + 1) % n;
        let (p, vp, vq) = (&poly[i], &vals[i], &vals[j]);
        if !vp.is_negative() {
            pos.push(p.clone());
        }
        if !vp.is_positive() {
            neg.push(p.clone());
        }
        if (vp.is_positive() && vq.is_negative()) || (vp.is_negative() && vq.is_positive()) {
            let q = &poly[j];
            let t = vp / &(vp - vq);
            let x: Point = [&p[0] + &t * (&q[0] - &p[0]), &p[1] + &t * (&q[1] - &p[1])];
            pos.push(x.clone());
            neg.push(x);
        }
    }
    Some((pos, neg))
}

fn canonical_cycle(mut poly: Vec<Point>) -> Vec<Point> {
    let start = (0..poly.len())
        .min_by(|&i, &j| lex(&poly[i], &poly[j]))
        .unwrap_or(0);
    poly.rotate_left(start);
    poly
}

fn centroid(poly: &[Point]) -> Point {
    let n = Rat::from_int(poly.len() as i64);
    let sx: Rat = poly.iter().map(|p| p[0].clone()).sum();
    let sy: Rat = poly.iter().map(|p| p[1].clone()).sum();
    [sx / &n, sy / n]
}

/// The subdivision of the hull by all lines through pairs of distinct points.
///
/// Lines and chambers are sorted canonically, so the result does not depend
/// on the order of the input points.
pub fn build_chambers(vs: &VertexSet) -> Result<ChamberMap> {
    if vs.dim() != 2 {
        return Err(Error::Invalid(format!(
            "chambers are only built in the plane; got dimension {}",
            vs.dim()
        )));
    }
    let vertices: Vec<Point> = vs
        .points()
        .iter()
        .map(|p| [p[0].clone(), p[1].clone()])
        .collect();
    let mut lines = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if vertices[i] != vertices[j] {
                lines.push(Line::through(&vertices[i], &vertices[j]));
            }
        }
    }
    lines.sort();
    lines.dedup();

    let hull = convex_hull(&vertices);
    let mut cells = vec![hull.clone()];
    for line in &lines {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            match split(&cell, line) {
                Some((a, b)) => {
                    next.push(a);
                    next.push(b);
                }
                None => next.push(cell),
            }
        }
        cells = next;
    }
    let mut chambers: Vec<Chamber> = cells
        .into_iter()
        .map(|c| {
            let polygon = canonical_cycle(c);
            Chamber {
                point: centroid(&polygon),
                polygon,
                density: None,
            }
        })
        .collect();
    chambers.sort_by(|a, b| lex(&a.point, &b.point));
    Ok(ChamberMap {
        hull,
        lines,
        chambers,
        vertices,
    })
}

/// Assigns to each chamber the sum of the densities `w / (2 Area)` of the
/// measure's triangles containing it.
pub fn chamber_densities(cm: &ChamberMap, m: &WeightedMeasure) -> Result<ChamberMap> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    let flat: Vec<Vec<usize>> = m
        .atoms()
        .iter()
        .filter(|a| !a.weight.is_zero() && !m.vertices().spans(a.simplex.indices()))
        .map(|a| a.simplex.indices().to_vec())
        .collect();
    if !flat.is_empty() {
        return Err(Error::SingularReconstruction(flat));
    }
    let vs = m.vertices();
    let tris: Vec<([Point; 3], Rat)> = m
        .density()?
        .into_iter()
        .map(|(s, d)| {
            let idx = s.indices();
            let p = |k: usize| [vs.point(idx[k])[0].clone(), vs.point(idx[k])[1].clone()];
            let mut t = [p(0), p(1), p(2)];
            if cross(&t[0], &t[1], &t[2]).is_negative() {
                t.swap(1, 2);
            }
            (t, d)
        })
        .collect();
    let mut out = cm.clone();
    for c in &mut out.chambers {
        let inside =
            |t: &[Point; 3]| (0..3).all(|i| !cross(&t[i], &t[(i + 1) % 3], &c.point).is_negative());
        c.density = Some(
            tris.iter()
                .filter(|(t, _)| inside(t))
                .map(|(_, d)| d.clone())
                .sum(),
        );
    }
    Ok(out)
}

/// [`chamber_densities`] for a reconstruction; singular ones are refused.
pub fn reconstruction_densities(
    cm: &ChamberMap,
    rec: &Reconstruction,
    vs: &VertexSet,
) -> Result<ChamberMap> {
    if rec.singular {
        return Err(Error::SingularReconstruction(
            rec.singular_simplices()
                .into_iter()
                .map(|s| s.indices().to_vec())
                .collect(),
        ));
    }
    let nonzero = Reconstruction {
        weights: rec
            .weights
            .iter()
            .filter(|e| !e.weight.is_zero())
            .cloned()
            .collect(),
        ..rec.clone()
    };
    chamber_densities(cm, &nonzero.to_measure(vs)?)
}
