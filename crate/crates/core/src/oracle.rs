//! Brute-force exact moments.
//!
//! Nothing here goes through generating functions. A simplex is pulled back
//! to the standard simplex `T_d` by `x = v_0 + A t`, the integrand is expanded
//! in `t`, and each monomial is integrated with the Dirichlet formula
//! `int_{T_d} t^K dt = prod(k_i!) / (|K| + d)!`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, multinomial, Rat, RatMat};
use crate::geometry::{Simplex, VertexSet, WeightedMeasure};
use crate::poly::{MultiIndex, Poly};

/// Moments `m_I` for every `|I| <= order`, zeros included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct MomentTable {
    dim: usize,
    order: u32,
    entries: BTreeMap<MultiIndex, Rat>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    index: Vec<u32>,
    value: Rat,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    dim: usize,
    order: u32,
    moments: Vec<EntryRepr>,
}

impl TryFrom<TableRepr> for MomentTable {
    type Error = Error;
    fn try_from(r: TableRepr) -> Result<Self> {
        MomentTable::from_entries(
            r.dim,
            r.order,
            r.moments
                .into_iter()
                .map(|e| (MultiIndex::new(e.index), e.value)),
        )
    }
}

impl From<MomentTable> for TableRepr {
    fn from(t: MomentTable) -> Self {
        TableRepr {
            dim: t.dim,
            order: t.order,
            moments: t
                .entries
                .into_iter()
                .map(|(i, v)| EntryRepr {
                    index: i.exps().to_vec(),
                    value: v,
                })
                .collect(),
        }
    }
}

impl MomentTable {
    /// All-zero table.
    pub fn zero(dim: usize, order: u32) -> Self {
        MomentTable {
            dim,
            order,
            entries: MultiIndex::up_to(dim, order)
                .into_iter()
                .map(|i| (i, Rat::zero()))
                .collect(),
        }
    }

    /// Checks that every index up to `order` is given exactly once and none beyond.
    pub fn from_entries(
        dim: usize,
        order: u32,
        entries: impl IntoIterator<Item = (MultiIndex, Rat)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, v) in entries {
            if i.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: i.dim(),
                });
            }
            if i.degree() > order {
                return Err(Error::DegreeExceeded {
                    degree: i.degree(),
                    bound: order,
                });
            }
            if map.insert(i.clone(), v).is_some() {
                return Err(Error::Invalid(format!(
                    "moment index {:?} repeated",
                    i.exps()
                )));
            }
        }
        let missing: Vec<Vec<u32>> = MultiIndex::up_to(dim, order)
            .into_iter()
            .filter(|i| !map.contains_key(i))
            .map(|i| i.exps().to_vec())
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteMoments { missing });
        }
        Ok(MomentTable {
            dim,
            order,
            entries: map,
        })
    }

    /// Values listed in graded-lex order of the indices.
    pub fn from_values(dim: usize, order: u32, values: Vec<Rat>) -> Result<Self> {
        let idx = MultiIndex::up_to(dim, order);
        if idx.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: idx.len(),
                found: values.len(),
            });
        }
        Ok(MomentTable {
            dim,
            order,
            entries: idx.into_iter().zip(values).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, index: &MultiIndex) -> Option<&Rat> {
        self.entries.get(index)
    }

    /// Shorthand for `get` with a literal exponent list. Panics if absent.
    pub fn at(&self, exps: &[u32]) -> &Rat {
        self.entries
            .get(&MultiIndex::new(exps.to_vec()))
            .unwrap_or_else(|| panic!("moment {exps:?} not in table"))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> + '_ {
        self.entries.iter()
    }

    pub fn values(&self) -> Vec<Rat> {
        self.entries.values().cloned().collect()
    }

    /// Indices missing for a table that should reach `order`.
    pub fn missing_up_to(&self, order: u32) -> Vec<Vec<u32>> {
        MultiIndex::up_to(self.dim, order)
            .into_iter()
            .filter(|i| !self.entries.contains_key(i))
            .map(|i| i.exps().to_vec())
            .collect()
    }

    /// Restriction to a lower order.
    pub fn truncate(&self, order: u32) -> MomentTable {
        MomentTable {
            dim: self.dim,
            order: order.min(self.order),
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| i.degree() <= order)
                .map(|(i, v)| (i.clone(), v.clone()))
                .collect(),
        }
    }

    /// `int <x, z>^j` expanded multinomially over the degree-`j` moments.
    pub fn axial(&self, z: &[Rat], j: u32) -> Result<Rat> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        if j > self.order {
            return Err(Error::IncompleteMoments {
                missing: self.missing_up_to(j),
            });
        }
        Ok(MultiIndex::of_degree(self.dim, j)
            .iter()
            .map(|i| {
                let zi: Rat = i.exps().iter().zip(z).map(|(&e, x)| x.pow(e)).product();
                Rat::from_int(multinomial(i.exps())) * zi * &self.entries[i]
            })
            .sum())
    }
}

/// Coordinates of `x = v_0 + A t` as polynomials in `t`, plus `|det A|`.
fn pullback(s: &Simplex, vs: &VertexSet) -> Result<(Vec<Poly>, Rat)> {
    let d = vs.dim();
    let idx = s.indices();
    let v0 = vs.point(idx[0]);
    let cols: Vec<Vec<Rat>> = idx[1..]
        .iter()
        .map(|&i| vs.point(i).iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    let a = RatMat::from_columns(d, &cols)?;
    let jac = a.det()?.abs();
    if jac.is_zero() {
        return Err(Error::DegenerateSimplex(idx.to_vec()));
    }
    let coords = (0..d)
        .map(|k| Poly::affine(v0[k].clone(), a.row(k)))
        .collect();
    Ok((coords, jac))
}

/// `int_{T_d} p(t) dt` term by term.
fn integrate_standard(p: &Poly) -> Rat {
    let d = p.dim() as u32;
    p.terms()
        .map(|(k, c)| c * Rat::new(k.factorial(), factorial(k.degree() + d)))
        .sum()
}

/// Integrals over one simplex of every monomial up to degree `order`.
struct SimplexIntegrator {
    jac: Rat,
    powers: Vec<Vec<Poly>>,
}

impl SimplexIntegrator {
    fn new(s: &Simplex, vs: &VertexSet, order: u32) -> Result<Self> {
        let (coords, jac) = pullback(s, vs)?;
        let powers = coords
            .iter()
            .map(|x| {
                let mut pw = vec![Poly::one(x.dim())];
                for e in 1..=order as usize {
                    let next = &pw[e - 1] * x;
                    pw.push(next);
                }
                pw
            })
            .collect();
        Ok(SimplexIntegrator { jac, powers })
    }

    fn monomial(&self, exps: &[u32]) -> Rat {
        let d = self.powers.len();
        let mut integrand = Poly::one(d);
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                integrand = &integrand * &self.powers[k][e as usize];
            }
        }
        integrate_standard(&integrand) * &self.jac
    }
}

/// `int_Delta x^I dx` over a non-degenerate simplex.
pub fn simplex_monomial_moment(s: &Simplex, vs: &VertexSet, index: &MultiIndex) -> Result<Rat> {
    let order = index.exps().iter().copied().max().unwrap_or(0);
    Ok(SimplexIntegrator::new(s, vs, order)?.monomial(index.exps()))
}

/// Moments of `rho * mu` to the given order (`rho = 1` when `None`).
pub fn measure_moments(m: &WeightedMeasure, order: u32, rho: Option<&Poly>) -> Result<MomentTable> {
    let d = m.dim();
    if let Some(r) = rho {
        if r.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: r.dim(),
            });
        }
    }
    let rho_deg = rho.and_then(Poly::degree).unwrap_or(0);
    let indices = MultiIndex::up_to(d, order);
    let mut values = vec![Rat::zero(); indices.len()];
    for atom in m.atoms() {
        if atom.weight.is_zero() {
            continue;
        }
        let integ = SimplexIntegrator::new(&atom.simplex, m.vertices(), order + rho_deg)?;
        // The Jacobian is d! Vol, so this is w / (d! Vol).
        let density = &atom.weight / &integ.jac;
        for (slot, idx) in values.iter_mut().zip(&indices) {
            let raw = match rho {
                None => integ.monomial(idx.exps()),
                Some(r) => r
                    .terms()
                    .map(|(j, c)| c * integ.monomial((idx + j).exps()))
                    .sum(),
            };
            *slot += &density * raw;
        }
    }
    MomentTable::from_values(d, order, values)
}

/// `int <x, z>^j dmu`.
pub fn axial_moment(m: &WeightedMeasure, z: &[Rat], j: u32) -> Result<Rat> {
    measure_moments(m, j, None)?.axial(z, j)
}
