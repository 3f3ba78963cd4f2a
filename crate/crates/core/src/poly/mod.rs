//! Sparse multivariate polynomials and truncated power series over [`Rat`].
//!
//! Terms are kept in a `BTreeMap` keyed by [`MultiIndex`], whose ordering is
//! graded-lex with `u1 > u2 > ...`. Iteration, serialization and the row order
//! of every coefficient matrix built from polynomials follow that order, so in
//! two variables the degree-2 block reads `1, u1, u2, u1^2, u1*u2, u2^2`.

mod index;
mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use index::MultiIndex;
pub use series::Series;

use crate::error::{Error, Result};
use crate::exact::Rat;

/// Sparse polynomial in `dim` variables. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Rat::one())
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        Poly::monomial(MultiIndex::zero(dim), c)
    }

    pub fn monomial(index: MultiIndex, c: Rat) -> Self {
        let mut p = Poly::zero(index.dim());
        if !c.is_zero() {
            p.terms.insert(index, c);
        }
        p
    }

    /// The variable `u_{k+1}` (0-based `k`).
    pub fn var(dim: usize, k: usize) -> Self {
        Poly::monomial(MultiIndex::unit(dim, k), Rat::one())
    }

    /// `c + sum_k a_k u_k`.
    pub fn affine(c: Rat, coeffs: &[Rat]) -> Self {
        let dim = coeffs.len();
        let mut p = Poly::constant(dim, c);
        for (k, a) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(dim, k), a.clone());
        }
        p
    }

    /// The vertex form `1 - <v, u>`.
    pub fn vertex_form(v: &[Rat]) -> Self {
        let neg: Vec<Rat> = v.iter().map(|x| -x).collect();
        Poly::affine(Rat::one(), &neg)
    }

    /// Builds a polynomial from raw terms, summing repeated exponents.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Rat)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(dim);
        for (idx, c) in terms {
            if idx.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: idx.dim(),
                });
            }
            p.add_term(idx, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Rat {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (MultiIndex, Rat)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, index: MultiIndex, c: Rat) {
        debug_assert_eq!(index.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_dim(&self, other: &Poly) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_dim(other)?;
        let mut p = self.clone();
        for (i, c) in &other.terms {
            p.add_term(i.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_dim(other)?;
        let mut p = self.clone();
        for (i, c) in &other.terms {
            p.add_term(i.clone(), -c);
        }
        Ok(p)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_dim(other)?;
        Ok(self.mul_bounded(other, None))
    }

    /// Product with every term above degree `k` discarded as it is produced.
    pub fn mul_truncated(&self, other: &Poly, k: u32) -> Result<Poly> {
        self.same_dim(other)?;
        Ok(self.mul_bounded(other, Some(k)))
    }

    fn mul_bounded(&self, other: &Poly, bound: Option<u32>) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if bound.is_some_and(|k| i.degree() + j.degree() > k) {
                    continue;
                }
                p.add_term(i + j, a * b);
            }
        }
        p
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(self.dim), |acc, _| &acc * self)
    }

    /// Drops every term of total degree above `k`.
    pub fn truncate(&self, k: u32) -> Series {
        Series::new(self.clone(), k)
    }

    pub(crate) fn truncated(&self, k: u32) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.degree() <= k)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative in the 0-based variable `k`.
    pub fn partial(&self, k: usize) -> Poly {
        assert!(k < self.dim, "variable index {k} out of range");
        let mut p = Poly::zero(self.dim);
        for (i, c) in &self.terms {
            let e = i.exps()[k];
            if e == 0 {
                continue;
            }
            let mut exps = i.exps().to_vec();
            exps[k] -= 1;
            p.add_term(MultiIndex::new(exps), c * Rat::from(e));
        }
        p
    }

    /// The degree if all terms share one; zero counts as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(MultiIndex::degree);
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    /// Pads every term with a new leading variable `u0` up to degree `total`.
    pub fn homogenize(&self, total: u32) -> Result<Poly> {
        let mut p = Poly::zero(self.dim + 1);
        for (i, c) in &self.terms {
            let deg = i.degree();
            if deg > total {
                return Err(Error::DegreeExceeded {
                    degree: deg,
                    bound: total,
                });
            }
            let mut exps = Vec::with_capacity(self.dim + 1);
            exps.push(total - deg);
            exps.extend_from_slice(i.exps());
            p.terms.insert(MultiIndex::new(exps), c.clone());
        }
        Ok(p)
    }

    /// Sets the leading variable `u0` to 1.
    pub fn dehomogenize(&self) -> Poly {
        assert!(
            self.dim > 0,
            "cannot dehomogenize a constant in zero variables"
        );
        let mut p = Poly::zero(self.dim - 1);
        for (i, c) in &self.terms {
            p.add_term(MultiIndex::new(i.exps()[1..].to_vec()), c.clone());
        }
        p
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.dim);
        self.terms
            .iter()
            .map(|(i, c)| {
                i.exps()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * x.pow(e))
            })
            .sum()
    }

    /// Exact quotient by a polynomial of degree 1 (affine or homogeneous
    /// linear), or `None` when the division leaves a remainder.
    pub fn div_linear(&self, form: &Poly) -> Option<Poly> {
        assert_eq!(self.dim, form.dim);
        assert_eq!(form.degree(), Some(1), "divisor must have degree 1");
        // Long division in the first variable the form actually involves.
        let k = (0..self.dim).find(|&k| !form.coeff(&MultiIndex::unit(self.dim, k)).is_zero())?;
        let lead = form.coeff(&MultiIndex::unit(self.dim, k));
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.dim);
        loop {
            let Some(top) = rem.terms.keys().map(|i| i.exps()[k]).max() else {
                break;
            };
            if top == 0 {
                return None;
            }
            let mut step = Poly::zero(self.dim);
            for (i, c) in rem.terms.iter().filter(|(i, _)| i.exps()[k] == top) {
                let mut exps = i.exps().to_vec();
                exps[k] -= 1;
                step.add_term(MultiIndex::new(exps), c / &lead);
            }
            rem = &rem - &(&step * form);
            quot = &quot + &step;
        }
        Some(quot)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on a dimension mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial dimensions differ")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial dimensions differ")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial dimensions differ")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = i
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    if e == 1 {
                        format!("u{}", k + 1)
                    } else {
                        format!("u{}^{}", k + 1, e)
                    }
                })
                .collect();
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.dim)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: Rat,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| TermRepr {
                    exp: i.exps().to_vec(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        Poly::from_terms(
            repr.dim,
            repr.terms
                .into_iter()
                .map(|t| (MultiIndex::new(t.exp), t.coef)),
        )
        .map_err(serde::de::Error::custom)
    }
}
