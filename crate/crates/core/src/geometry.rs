//! Vertex sets, simplices and signed simplicial measures.
//!
//! A [`WeightedMeasure`] is a finite combination `sum_k c_k * lambda|Delta_k`
//! of Lebesgue measures restricted to simplices, stored through the weights
//! `w = d! * c * Vol(Delta)`. Indices into the vertex set are 0-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rat, RatMat};
use crate::poly::Poly;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Binomial coefficient for small arguments.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// An ordered list of points in `R^d`; duplicate points are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "VertexSetRepr", into = "VertexSetRepr")]
pub struct VertexSet {
    dim: usize,
    points: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct VertexSetRepr {
    dim: usize,
    points: Vec<Vec<Rat>>,
}

impl TryFrom<VertexSetRepr> for VertexSet {
    type Error = Error;
    fn try_from(r: VertexSetRepr) -> Result<Self> {
        VertexSet::new(r.dim, r.points)
    }
}

impl From<VertexSet> for VertexSetRepr {
    fn from(v: VertexSet) -> Self {
        VertexSetRepr {
            dim: v.dim,
            points: v.points,
        }
    }
}

impl VertexSet {
    /// Validates coordinate counts and that the points affinely span `R^dim`.
    pub fn new(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let vs = VertexSet { dim, points };
        let all: Vec<usize> = (0..vs.len()).collect();
        if !vs.spans(&all) {
            return Err(Error::NotSpanning { dim });
        }
        Ok(vs)
    }

    /// Integer coordinates, for tables and tests.
    pub fn from_i64(dim: usize, points: &[&[i64]]) -> Result<Self> {
        VertexSet::new(
            dim,
            points
                .iter()
                .map(|p| p.iter().map(|&x| Rat::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[Rat] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    /// The vertex form `1 - <v_i, u>`.
    pub fn form(&self, i: usize) -> Poly {
        Poly::vertex_form(&self.points[i])
    }

    /// Whether the points with these indices affinely span `R^d`.
    pub fn spans(&self, indices: &[usize]) -> bool {
        if indices.len() < self.dim + 1 {
            return false;
        }
        let mut cols = Vec::with_capacity(indices.len());
        for &i in indices {
            let mut c = vec![Rat::one()];
            c.extend(self.points[i].iter().cloned());
            cols.push(c);
        }
        RatMat::from_columns(self.dim + 1, &cols)
            .map(|m| m.rank() == self.dim + 1)
            .unwrap_or(false)
    }

    /// `det(v_1 - v_0, ..., v_d - v_0)` for the given `d+1` indices.
    pub fn signed_det(&self, indices: &[usize]) -> Rat {
        assert_eq!(indices.len(), self.dim + 1, "need d+1 vertices");
        let base = &self.points[indices[0]];
        let cols: Vec<Vec<Rat>> = indices[1..]
            .iter()
            .map(|&i| {
                self.points[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        RatMat::from_columns(self.dim, &cols)
            .and_then(|m| m.det())
            .expect("square by construction")
    }

    /// `|det| / d!`.
    pub fn volume(&self, s: &Simplex) -> Rat {
        self.signed_det(s.indices()).abs() / Rat::from_int(factorial(self.dim as u32))
    }

    /// Barycentric coordinates of `p` with respect to a non-degenerate simplex.
    pub fn barycentric(&self, s: &Simplex, p: &[Rat]) -> Result<Vec<Rat>> {
        let cols: Vec<Vec<Rat>> = s
            .indices()
            .iter()
            .map(|&i| {
                let mut c = vec![Rat::one()];
                c.extend(self.points[i].iter().cloned());
                c
            })
            .collect();
        let m = RatMat::from_columns(self.dim + 1, &cols)?;
        let mut rhs = vec![Rat::one()];
        rhs.extend(p.iter().cloned());
        m.solve(&rhs)
            .map_err(|_| Error::DegenerateSimplex(s.indices().to_vec()))
    }

    /// Sorts every `(d+1)`-subset by degeneracy.
    pub fn classify(&self) -> Classification {
        let d = self.dim;
        let n = self.len();
        let degenerate: Vec<Simplex> = combinations(n, d + 1)
            .into_iter()
            .filter(|s| !self.spans(s))
            .map(Simplex::new)
            .collect();
        let kind = if degenerate.is_empty() {
            Degeneracy::Strong
        } else if combinations(n, d + 2).iter().all(|s| self.spans(s)) {
            Degeneracy::Weak
        } else {
            Degeneracy::Neither
        };
        Classification { kind, degenerate }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// Every `(d+1)`-subset spans.
    Strong,
    /// Every `(d+2)`-subset spans, but some `(d+1)`-subset does not.
    Weak,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: Degeneracy,
    /// Non-spanning `(d+1)`-subsets in lexicographic order.
    pub degenerate: Vec<Simplex>,
}

impl Classification {
    pub fn is_weak_or_strong(&self) -> bool {
        self.kind != Degeneracy::Neither
    }
}

/// A sorted `(d+1)`-tuple of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        Simplex(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Indices of `0..n` not in the simplex.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|i| !self.contains(*i)).collect()
    }

    /// The simplex whose vertices are `0..n` minus `excluded`.
    pub fn from_complement(excluded: &[usize], n: usize) -> Self {
        Simplex((0..n).filter(|i| !excluded.contains(i)).collect())
    }

    /// Replaces vertex `old` with `new`.
    pub fn replace(&self, old: usize, new: usize) -> Simplex {
        Simplex::new(
            self.0
                .iter()
                .map(|&i| if i == old { new } else { i })
                .collect(),
        )
    }
}

impl From<Vec<usize>> for Simplex {
    fn from(v: Vec<usize>) -> Self {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<usize> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

/// One simplex of a measure together with its weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub simplex: Simplex,
    pub weight: Rat,
}

/// A finite signed combination of uniform simplex measures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub struct WeightedMeasure {
    vertices: VertexSet,
    atoms: Vec<Atom>,
    singular: bool,
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    vertices: VertexSet,
    atoms: Vec<Atom>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    singular: bool,
}

impl TryFrom<MeasureRepr> for WeightedMeasure {
    type Error = Error;
    fn try_from(r: MeasureRepr) -> Result<Self> {
        let atoms = r.atoms.into_iter().map(|a| (a.simplex, a.weight));
        if r.singular {
            WeightedMeasure::new_singular(r.vertices, atoms)
        } else {
            WeightedMeasure::new(r.vertices, atoms)
        }
    }
}

impl From<WeightedMeasure> for MeasureRepr {
    fn from(m: WeightedMeasure) -> Self {
        MeasureRepr {
            vertices: m.vertices,
            atoms: m.atoms,
            singular: m.singular,
        }
    }
}

impl WeightedMeasure {
    /// Rejects degenerate simplices.
    pub fn new(
        vertices: VertexSet,
        atoms: impl IntoIterator<Item = (Simplex, Rat)>,
    ) -> Result<Self> {
        Self::build(vertices, atoms, false)
    }

    /// Allows degenerate simplices; they stand for the flattened limits that
    /// the weak inverse solver produces.
    pub fn new_singular(
        vertices: VertexSet,
        atoms: impl IntoIterator<Item = (Simplex, Rat)>,
    ) -> Result<Self> {
        Self::build(vertices, atoms, true)
    }

    fn build(
        vertices: VertexSet,
        atoms: impl IntoIterator<Item = (Simplex, Rat)>,
        singular: bool,
    ) -> Result<Self> {
        let d = vertices.dim();
        let mut seen = std::collections::BTreeSet::new();
        let mut list = Vec::new();
        for (simplex, weight) in atoms {
            let idx = simplex.indices();
            if idx.len() != d + 1 {
                return Err(Error::DimensionMismatch {
                    expected: d + 1,
                    found: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::Invalid(format!(
                    "vertex index {bad} out of range (0..{})",
                    vertices.len()
                )));
            }
            if !seen.insert(simplex.clone()) {
                return Err(Error::Invalid(format!("simplex {idx:?} appears twice")));
            }
            if !singular && !vertices.spans(idx) {
                return Err(Error::DegenerateSimplex(idx.to_vec()));
            }
            list.push(Atom { simplex, weight });
        }
        Ok(WeightedMeasure {
            vertices,
            atoms: list,
            singular,
        })
    }

    /// Lebesgue measure on each listed simplex (weight `d! * Vol`).
    pub fn standard(
        vertices: VertexSet,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let scale = Rat::from_int(factorial(vertices.dim() as u32));
        let atoms: Vec<(Simplex, Rat)> = simplices
            .into_iter()
            .map(|s| {
                let w = vertices.volume(&s) * &scale;
                (s, w)
            })
            .collect();
        WeightedMeasure::new(vertices, atoms)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.vertices.dim()
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Total mass `sum w / d!`.
    pub fn mass(&self) -> Rat {
        let total: Rat = self.atoms.iter().map(|a| &a.weight).sum();
        total / Rat::from_int(factorial(self.dim() as u32))
    }

    /// `w / (d! Vol)` per atom.
    pub fn density(&self) -> Result<Vec<(Simplex, Rat)>> {
        let scale = Rat::from_int(factorial(self.dim() as u32));
        self.atoms
            .iter()
            .map(|a| {
                let vol = self.vertices.volume(&a.simplex);
                if vol.is_zero() {
                    return Err(Error::DegenerateSimplex(a.simplex.indices().to_vec()));
                }
                Ok((a.simplex.clone(), &a.weight / (vol * &scale)))
            })
            .collect()
    }

    /// An equal measure supported only on simplices through `pivot`.
    ///
    /// Each atom on `sigma` whose barycentric coordinates of the pivot are
    /// `lambda` becomes `sum_i lambda_i w` on `conv(F_i, pivot)`, where `F_i`
    /// is the facet opposite vertex `i`. So facets not visible from the pivot
    /// (`lambda_i > 0`) enter with `+`, visible ones with `-`, and facets whose
    /// hyperplane contains the pivot (`lambda_i = 0`) are dropped.
    pub fn rebase(&self, pivot: usize) -> Result<WeightedMeasure> {
        if pivot >= self.vertices.len() {
            return Err(Error::Invalid(format!("pivot {pivot} out of range")));
        }
        if self.atoms.iter().all(|a| a.simplex.contains(pivot)) {
            return Ok(self.clone());
        }
        let p = self.vertices.point(pivot).to_vec();
        let mut acc: BTreeMap<Simplex, Rat> = BTreeMap::new();
        for a in &self.atoms {
            if a.simplex.contains(pivot) {
                *acc.entry(a.simplex.clone()).or_default() += &a.weight;
                continue;
            }
            let lambda = self.vertices.barycentric(&a.simplex, &p)?;
            for (&i, l) in a.simplex.indices().iter().zip(&lambda) {
                if l.is_zero() {
                    continue;
                }
                *acc.entry(a.simplex.replace(i, pivot)).or_default() += &a.weight * l;
            }
        }
        WeightedMeasure::new(
            self.vertices.clone(),
            acc.into_iter().filter(|(_, w)| !w.is_zero()),
        )
    }
}
