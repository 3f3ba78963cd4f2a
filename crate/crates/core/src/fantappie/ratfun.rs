use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rat};
use crate::geometry::{Simplex, VertexSet, WeightedMeasure};
use crate::oracle::MomentTable;
use crate::poly::{MultiIndex, Poly, Series};

/// The form `1 - <v, u>` identified by its vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    pub vertex: Vec<Rat>,
}

impl LinearForm {
    pub fn new(vertex: Vec<Rat>) -> Self {
        LinearForm { vertex }
    }

    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    /// `v = 0`, i.e. the constant form 1.
    pub fn is_constant(&self) -> bool {
        self.vertex.iter().all(Rat::is_zero)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::vertex_form(&self.vertex)
    }

    /// `1 / (1 - <v, u>)` to total degree `order`.
    pub fn geometric(&self, order: u32) -> Poly {
        let dim = self.dim();
        let pairing = Poly::affine(Rat::zero(), &self.vertex);
        // Horner: g <- 1 + <v,u> g, truncating as we go.
        let mut g = Poly::one(dim);
        for _ in 0..order {
            g = &Poly::one(dim) + &g.mul_truncated(&pairing, order).expect("same dim");
        }
        g
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A polynomial over a product of vertex forms.
///
/// Forms equal to the constant 1 are never stored. After [`RatFun::cancel`]
/// no stored form divides the numerator, and the representation is unique.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RatFunRepr", into = "RatFunRepr")]
pub struct RatFun {
    numerator: Poly,
    denominator: BTreeMap<LinearForm, u32>,
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    vertex: Vec<Rat>,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct RatFunRepr {
    numerator: Poly,
    denominator: Vec<FactorRepr>,
}

impl TryFrom<RatFunRepr> for RatFun {
    type Error = Error;
    fn try_from(r: RatFunRepr) -> Result<Self> {
        RatFun::new(
            r.numerator,
            r.denominator
                .into_iter()
                .map(|f| (LinearForm::new(f.vertex), f.mult)),
        )
    }
}

impl From<RatFun> for RatFunRepr {
    fn from(f: RatFun) -> Self {
        RatFunRepr {
            numerator: f.numerator,
            denominator: f
                .denominator
                .into_iter()
                .map(|(l, mult)| FactorRepr {
                    vertex: l.vertex,
                    mult,
                })
                .collect(),
        }
    }
}

impl RatFun {
    /// Uncancelled; constant forms are dropped.
    pub fn new(
        numerator: Poly,
        forms: impl IntoIterator<Item = (LinearForm, u32)>,
    ) -> Result<Self> {
        let dim = numerator.dim();
        let mut denominator = BTreeMap::new();
        for (l, mult) in forms {
            if l.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: l.dim(),
                });
            }
            if mult > 0 && !l.is_constant() {
                *denominator.entry(l).or_insert(0) += mult;
            }
        }
        Ok(RatFun {
            numerator,
            denominator,
        })
    }

    pub fn zero(dim: usize) -> Self {
        RatFun {
            numerator: Poly::zero(dim),
            denominator: BTreeMap::new(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn dim(&self) -> usize {
        self.numerator.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Distinct forms with multiplicities, in canonical order.
    pub fn denominator(&self) -> impl Iterator<Item = (&LinearForm, u32)> + '_ {
        self.denominator.iter().map(|(l, &m)| (l, m))
    }

    pub fn multiplicity(&self, vertex: &[Rat]) -> u32 {
        self.denominator
            .get(&LinearForm::new(vertex.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Total number of forms counted with multiplicity.
    pub fn denominator_degree(&self) -> u32 {
        self.denominator.values().sum()
    }

    pub fn denominator_poly(&self) -> Poly {
        self.denominator
            .iter()
            .fold(Poly::one(self.dim()), |acc, (l, &m)| {
                &acc * &l.to_poly().pow(m)
            })
    }

    /// Removes every form that divides the numerator exactly, as often as it does.
    pub fn cancel(mut self) -> RatFun {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return self;
        }
        for (l, mult) in self.denominator.iter_mut() {
            let form = l.to_poly();
            while *mult > 0 {
                match self.numerator.div_linear(&form) {
                    Some(q) => {
                        self.numerator = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
        }
        self.denominator.retain(|_, m| *m > 0);
        self
    }

    /// Sum over the least common denominator, then cancelled.
    pub fn add(&self, other: &RatFun) -> Result<RatFun> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let mut lcm = self.denominator.clone();
        for (l, &m) in &other.denominator {
            let e = lcm.entry(l.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |f: &RatFun| {
            lcm.iter().fold(f.numerator.clone(), |acc, (l, &m)| {
                let have = f.denominator.get(l).copied().unwrap_or(0);
                &acc * &l.to_poly().pow(m - have)
            })
        };
        let numerator = &lift(self) + &lift(other);
        Ok(RatFun {
            numerator,
            denominator: lcm,
        }
        .cancel())
    }

    /// Truncated Taylor expansion at the origin.
    pub fn taylor(&self, order: u32) -> Series {
        let mut acc = self.numerator.truncated(order);
        for (l, &m) in &self.denominator {
            let g = l.geometric(order);
            for _ in 0..m {
                acc = acc.mul_truncated(&g, order).expect("same dim");
            }
        }
        Series::new(acc, order)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator.to_string();
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        if self.numerator.len() > 1 {
            write!(f, "({num})/(")?;
        } else {
            write!(f, "{num}/(")?;
        }
        for (l, &m) in &self.denominator {
            if m == 1 {
                write!(f, "({l})")?;
            } else {
                write!(f, "({l})^{m}")?;
            }
        }
        write!(f, ")")
    }
}

/// `w / prod_{i in s} (1 - <v_i, u>)`; with `w = d! Vol` this is the transform
/// of the uniform measure on `s`.
///
/// Degenerate simplices are rejected unless `allow_degenerate`; they then
/// stand for the flattened limit measures of the weak solver.
pub fn simplex_f(
    s: &Simplex,
    vs: &VertexSet,
    weight: &Rat,
    allow_degenerate: bool,
) -> Result<RatFun> {
    if !allow_degenerate && !vs.spans(s.indices()) {
        return Err(Error::DegenerateSimplex(s.indices().to_vec()));
    }
    RatFun::new(
        Poly::constant(vs.dim(), weight.clone()),
        s.indices()
            .iter()
            .map(|&i| (LinearForm::new(vs.point(i).to_vec()), 1)),
    )
}

/// The normalized moment generating function of a measure, cancelled.
pub fn measure_f(m: &WeightedMeasure) -> Result<RatFun> {
    let vs = m.vertices();
    let mut lcm: BTreeMap<LinearForm, u32> = BTreeMap::new();
    let mut terms = Vec::with_capacity(m.atoms().len());
    for a in m.atoms() {
        let f = simplex_f(&a.simplex, vs, &a.weight, m.is_singular())?;
        for (l, mult) in f.denominator() {
            let e = lcm.entry(l.clone()).or_insert(0);
            *e = (*e).max(mult);
        }
        terms.push(f);
    }
    let mut numerator = Poly::zero(vs.dim());
    for f in &terms {
        let lifted = lcm.iter().fold(f.numerator.clone(), |acc, (l, &mult)| {
            let have = f.denominator.get(l).copied().unwrap_or(0);
            &acc * &l.to_poly().pow(mult - have)
        });
        numerator = &numerator + &lifted;
    }
    Ok(RatFun {
        numerator,
        denominator: lcm,
    }
    .cancel())
}

/// Coefficients `(|I|+d)!/I! * m_I` to moments.
pub fn series_to_moments(s: &Series) -> MomentTable {
    let d = s.dim() as u32;
    let values = MultiIndex::up_to(s.dim(), s.order())
        .into_iter()
        .map(|i| s.coeff(&i) * Rat::new(i.factorial(), factorial(i.degree() + d)))
        .collect();
    MomentTable::from_values(s.dim(), s.order(), values).expect("complete by construction")
}

/// Moments to the normalized generating series.
pub fn moments_to_series(t: &MomentTable) -> Series {
    let d = t.dim() as u32;
    let poly = Poly::from_terms(
        t.dim(),
        t.entries().map(|(i, m)| {
            (
                i.clone(),
                m * Rat::new(factorial(i.degree() + d), i.factorial()),
            )
        }),
    )
    .expect("indices match the table dimension");
    Series::new(poly, t.order())
}
