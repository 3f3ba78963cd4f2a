//! Vertex formulas for simple polytopes.
//!
//! With `D_v(z) = |det K_v| / prod_j <w_j(v), z>`, the axial moments are
//! `mu_j(z) = (-1)^d j!/(j+d)! sum_v <v,z>^{j+d} D_v(z)`, and the sums
//! `sum_v <v,z>^j D_v(z)` vanish for `j < d`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ratfun::{LinearForm, RatFun};
use crate::error::{Error, Result};
use crate::exact::{factorial, Rat, RatMat};
use crate::poly::Poly;

/// A vertex with the `d` edge directions leaving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentCone {
    pub vertex: Vec<Rat>,
    pub edges: Vec<Vec<Rat>>,
}

impl TangentCone {
    /// `|det(w_1, ..., w_d)|`.
    pub fn abs_det(&self) -> Rat {
        let d = self.vertex.len();
        RatMat::from_columns(d, &self.edges)
            .and_then(|m| m.det())
            .map(|x| x.abs())
            .unwrap_or_default()
    }
}

/// Vertex and edge data of a simple polytope, supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct SimplePolytopeSpec {
    dim: usize,
    cones: Vec<TangentCone>,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    dim: usize,
    cones: Vec<TangentCone>,
}

impl TryFrom<SpecRepr> for SimplePolytopeSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        SimplePolytopeSpec::new(r.dim, r.cones)
    }
}

impl From<SimplePolytopeSpec> for SpecRepr {
    fn from(s: SimplePolytopeSpec) -> Self {
        SpecRepr {
            dim: s.dim,
            cones: s.cones,
        }
    }
}

impl SimplePolytopeSpec {
    pub fn new(dim: usize, cones: Vec<TangentCone>) -> Result<Self> {
        if cones.len() < dim + 1 {
            return Err(Error::Invalid(format!(
                "a {dim}-polytope needs at least {} vertices, got {}",
                dim + 1,
                cones.len()
            )));
        }
        for (i, c) in cones.iter().enumerate() {
            if c.vertex.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.vertex.len(),
                });
            }
            if c.edges.len() != dim {
                return Err(Error::Invalid(format!(
                    "vertex {i} has {} edges; a simple polytope needs exactly {dim}",
                    c.edges.len()
                )));
            }
            if let Some(e) = c.edges.iter().find(|e| e.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.len(),
                });
            }
            if c.abs_det().is_zero() {
                return Err(Error::Invalid(format!(
                    "edge vectors at vertex {i} are linearly dependent"
                )));
            }
        }
        Ok(SimplePolytopeSpec { dim, cones })
    }

    /// Every vertex joined to all others; the tangent-cone data of a simplex.
    pub fn simplex(vertices: &[Vec<Rat>]) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        let cones = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| TangentCone {
                vertex: v.clone(),
                edges: vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, w)| w.iter().zip(v).map(|(a, b)| a - b).collect())
                    .collect(),
            })
            .collect();
        SimplePolytopeSpec::new(dim, cones)
    }

    /// The box `prod [lo_k, hi_k]`.
    pub fn bbox(lo: &[Rat], hi: &[Rat]) -> Result<Self> {
        let dim = lo.len();
        let cones = (0..1usize << dim)
            .map(|mask| {
                let at_hi = |k: usize| mask >> k & 1 == 1;
                let vertex = (0..dim)
                    .map(|k| {
                        if at_hi(k) {
                            hi[k].clone()
                        } else {
                            lo[k].clone()
                        }
                    })
                    .collect();
                let edges = (0..dim)
                    .map(|k| {
                        let mut e = vec![Rat::zero(); dim];
                        e[k] = if at_hi(k) {
                            &lo[k] - &hi[k]
                        } else {
                            &hi[k] - &lo[k]
                        };
                        e
                    })
                    .collect();
                TangentCone { vertex, edges }
            })
            .collect();
        SimplePolytopeSpec::new(dim, cones)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cones(&self) -> &[TangentCone] {
        &self.cones
    }

    /// `D_v(z)` per vertex.
    fn vertex_weights(&self, z: &[Rat]) -> Result<Vec<Rat>> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        self.cones
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut den = Rat::one();
                for e in &c.edges {
                    let p = dot(e, z);
                    if p.is_zero() {
                        return Err(Error::DegenerateDirection { vertex: i });
                    }
                    den *= &p;
                }
                Ok(c.abs_det() / den)
            })
            .collect()
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `int_P <x, z>^j dx`.
pub fn brion_axial(p: &SimplePolytopeSpec, z: &[Rat], j: u32) -> Result<Rat> {
    let dv = p.vertex_weights(z)?;
    let d = p.dim() as u32;
    let sum: Rat = p
        .cones()
        .iter()
        .zip(&dv)
        .map(|(c, w)| dot(&c.vertex, z).pow(j + d) * w)
        .sum();
    let sign = if d.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    Ok(sign * Rat::new(factorial(j), factorial(j + d)) * sum)
}

/// `sum_v <v,z>^j D_v(z)` for `j = 0..d-1`; all zero for valid input.
pub fn brion_identity_residuals(p: &SimplePolytopeSpec, z: &[Rat]) -> Result<Vec<Rat>> {
    let dv = p.vertex_weights(z)?;
    Ok((0..p.dim() as u32)
        .map(|j| {
            p.cones()
                .iter()
                .zip(&dv)
                .map(|(c, w)| dot(&c.vertex, z).pow(j) * w)
                .sum()
        })
        .collect())
}

/// A homogeneous linear form scaled so its first nonzero coefficient is 1.
fn normalized_edge_form(e: &[Rat]) -> (Vec<Rat>, Rat) {
    let lead = e
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .expect("nonzero edge");
    (e.iter().map(|x| x / &lead).collect(), lead)
}

/// The generating function assembled from the vertex terms
/// `(-1)^d |det K_v| / (prod_j <w_j(v), u> (1 - <v, u>))`.
///
/// The terms are combined over a common denominator and cancelled. The
/// homogeneous edge forms always cancel for a genuine polytope; if one
/// survives the input data is inconsistent and an error is returned.
pub fn brion_f(p: &SimplePolytopeSpec) -> Result<RatFun> {
    let d = p.dim();
    let mut edge_lcm: BTreeMap<Vec<Rat>, u32> = BTreeMap::new();
    let mut vertex_lcm: BTreeMap<LinearForm, u32> = BTreeMap::new();
    struct Term {
        coef: Rat,
        edges: BTreeMap<Vec<Rat>, u32>,
        vertex: LinearForm,
    }
    let mut terms = Vec::new();
    for c in p.cones() {
        let mut edges = BTreeMap::new();
        let mut scale = Rat::one();
        for e in &c.edges {
            let (h, lead) = normalized_edge_form(e);
            scale *= &lead;
            *edges.entry(h).or_insert(0) += 1;
        }
        for (h, &m) in &edges {
            let slot = edge_lcm.entry(h.clone()).or_insert(0);
            *slot = (*slot).max(m);
        }
        let vertex = LinearForm::new(c.vertex.clone());
        vertex_lcm.entry(vertex.clone()).or_insert(1);
        let sign = if d.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        terms.push(Term {
            coef: sign * c.abs_det() / scale,
            edges,
            vertex,
        });
    }
    let edge_poly = |h: &Vec<Rat>| Poly::affine(Rat::zero(), h);
    let mut numerator = Poly::zero(d);
    for t in &terms {
        let mut lifted = Poly::constant(d, t.coef.clone());
        for (h, &m) in &edge_lcm {
            let have = t.edges.get(h).copied().unwrap_or(0);
            lifted = &lifted * &edge_poly(h).pow(m - have);
        }
        for l in vertex_lcm.keys() {
            if *l != t.vertex {
                lifted = &lifted * &l.to_poly();
            }
        }
        numerator = &numerator + &lifted;
    }
    for (h, &m) in &edge_lcm {
        let form = edge_poly(h);
        for _ in 0..m {
            numerator = numerator.div_linear(&form).ok_or_else(|| {
                Error::Invalid(format!(
                    "edge form {form} does not cancel; the cone data is not a polytope"
                ))
            })?;
        }
    }
    Ok(RatFun::new(numerator, vertex_lcm)?.cancel())
}
