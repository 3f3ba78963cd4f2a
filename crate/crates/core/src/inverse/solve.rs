//! Reconstruction of simplicial measures from moments.

use serde::{Deserialize, Serialize};

use super::basis::{build_extended, build_mat_s, extended_columns, numerator_degree, FormBasis};
use crate::error::{Error, Result};
use crate::exact::{Rat, RatMat};
use crate::fantappie::{moments_to_series, LinearForm, RatFun};
use crate::geometry::{binomial, Degeneracy, Simplex, VertexSet, WeightedMeasure};
use crate::oracle::MomentTable;
use crate::poly::{MultiIndex, Poly};

/// `P = [T(u) * Phi_S(u)]_{N-d-1}`, where `T` is the normalized generating
/// series of the moments and `Phi_S` the product of all vertex forms.
pub fn recover_numerator(t: &MomentTable, vs: &VertexSet) -> Result<Poly> {
    if t.dim() != vs.dim() {
        return Err(Error::DimensionMismatch {
            expected: vs.dim(),
            found: t.dim(),
        });
    }
    let k = numerator_degree(vs)?;
    let missing = t.missing_up_to(k);
    if !missing.is_empty() {
        return Err(Error::IncompleteMoments { missing });
    }
    let mut acc = moments_to_series(&t.truncate(k)).into_poly();
    for i in 0..vs.len() {
        acc = acc.mul_truncated(&vs.form(i), k)?;
    }
    Ok(acc)
}

/// One reconstructed atom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub simplex: Simplex,
    pub weight: Rat,
    /// The simplex is flat; a nonzero weight is a singular measure on it.
    pub degenerate: bool,
}

/// A term of the difference between the given and the reconstructed
/// normalized series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualTerm {
    pub exp: Vec<u32>,
    pub coef: Rat,
}

/// Weights on a basis of simplices reproducing the given moments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub pivot: usize,
    pub weights: Vec<WeightEntry>,
    /// Some degenerate simplex carries nonzero weight.
    pub singular: bool,
    /// Nonzero only when moments beyond order `N-d-1` disagree with the
    /// reconstruction.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<ResidualTerm>,
}

impl Reconstruction {
    /// Degenerate simplices with nonzero weight.
    pub fn singular_simplices(&self) -> Vec<&Simplex> {
        self.weights
            .iter()
            .filter(|e| e.degenerate && !e.weight.is_zero())
            .map(|e| &e.simplex)
            .collect()
    }

    pub fn weight(&self, s: &Simplex) -> Option<&Rat> {
        self.weights
            .iter()
            .find(|e| &e.simplex == s)
            .map(|e| &e.weight)
    }

    pub fn weight_vector(&self) -> Vec<Rat> {
        self.weights.iter().map(|e| e.weight.clone()).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.residual.is_empty()
    }

    /// The reconstructed measure over `vs`; singular atoms are kept when present.
    pub fn to_measure(&self, vs: &VertexSet) -> Result<WeightedMeasure> {
        let atoms = self
            .weights
            .iter()
            .map(|e| (e.simplex.clone(), e.weight.clone()));
        if self.weights.iter().any(|e| e.degenerate) {
            WeightedMeasure::new_singular(vs.clone(), atoms)
        } else {
            WeightedMeasure::new(vs.clone(), atoms)
        }
    }

    /// `sum_Delta w_Delta / prod_{i in Delta} l_i`, cancelled.
    pub fn generating_function(&self, vs: &VertexSet) -> Result<RatFun> {
        let mut acc = RatFun::zero(vs.dim());
        for e in &self.weights {
            let f = RatFun::new(
                Poly::constant(vs.dim(), e.weight.clone()),
                e.simplex
                    .indices()
                    .iter()
                    .map(|&i| (LinearForm::new(vs.point(i).to_vec()), 1)),
            )?;
            acc = acc.add(&f)?;
        }
        Ok(acc)
    }
}

fn degenerate_lists(simplices: &[Simplex]) -> Vec<Vec<usize>> {
    simplices.iter().map(|s| s.indices().to_vec()).collect()
}

/// Coefficients of `P` in graded-lex order, matching the matrix rows.
fn rhs(p: &Poly, vs: &VertexSet, k: u32) -> Vec<Rat> {
    MultiIndex::up_to(vs.dim(), k)
        .iter()
        .map(|i| p.coeff(i))
        .collect()
}

/// The rows of the inverse of the basis matrix: linear functionals taking
/// the coefficients of `P` (graded-lex) to the weights.
pub fn weight_functionals(basis: &FormBasis) -> Result<RatMat> {
    build_mat_s(basis)?.inverse()
}

/// Solves against an explicit basis of products and records degeneracy.
pub fn solve_with_basis(t: &MomentTable, basis: &FormBasis) -> Result<Reconstruction> {
    let vs = basis.vertices();
    let k = numerator_degree(vs)?;
    let p = recover_numerator(t, vs)?;
    let mat = build_mat_s(basis)?;
    let w = mat.solve(&rhs(&p, vs, k))?;
    let weights: Vec<WeightEntry> = basis
        .simplices()
        .into_iter()
        .zip(w)
        .map(|(simplex, weight)| WeightEntry {
            degenerate: !vs.spans(simplex.indices()),
            simplex,
            weight,
        })
        .collect();
    let singular = weights.iter().any(|e| e.degenerate && !e.weight.is_zero());
    let mut rec = Reconstruction {
        pivot: basis.pivot(),
        weights,
        singular,
        residual: Vec::new(),
    };
    rec.residual = residual(&rec, t, vs)?;
    Ok(rec)
}

fn residual(rec: &Reconstruction, t: &MomentTable, vs: &VertexSet) -> Result<Vec<ResidualTerm>> {
    let given = moments_to_series(t);
    let ours = rec.generating_function(vs)?.taylor(t.order());
    let diff = given.poly().checked_sub(ours.poly())?;
    Ok(diff
        .terms()
        .map(|(i, c)| ResidualTerm {
            exp: i.exps().to_vec(),
            coef: c.clone(),
        })
        .collect())
}

/// Weights on the `C(N-1,d)` simplices through `pivot` for a strongly
/// non-degenerate vertex set.
pub fn solve_strong(t: &MomentTable, vs: &VertexSet, pivot: usize) -> Result<Reconstruction> {
    let class = vs.classify();
    if class.kind != Degeneracy::Strong {
        return Err(Error::NotStronglyNonDegenerate {
            degenerate: degenerate_lists(&class.degenerate),
        });
    }
    let basis = FormBasis::through_pivot(vs, pivot)?;
    solve_with_basis(t, &basis).map_err(|e| match e {
        Error::Singular { rank } => Error::Internal(format!(
            "form-product matrix of a strongly non-degenerate set has rank {rank}"
        )),
        other => other,
    })
}

/// A full-rank set of `C(N-1,d)` extended columns.
///
/// Columns are scanned in priority order (products complementary to
/// degenerate simplices, then products avoiding the pivot form, then the
/// rest, each group in extended order), keeping every column independent of
/// those already kept. The result lists the kept columns in extended order.
pub fn select_minor(ext: &RatMat, vs: &VertexSet, pivot: usize) -> Result<FormBasis> {
    let all = extended_columns(vs)?;
    if ext.cols() != all.len() {
        return Err(Error::DimensionMismatch {
            expected: all.len(),
            found: ext.cols(),
        });
    }
    if pivot >= vs.len() {
        return Err(Error::Invalid(format!("pivot {pivot} out of range")));
    }
    let n = vs.len();
    let degenerate: Vec<bool> = all
        .iter()
        .map(|c| !vs.spans(Simplex::from_complement(c, n).indices()))
        .collect();
    let group = |i: usize| {
        if degenerate[i] {
            0
        } else if !all[i].contains(&pivot) {
            1
        } else {
            2
        }
    };
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by_key(|&i| (group(i), i));
    let needed = binomial(n - 1, vs.dim());
    let mut kept = ext.independent_columns(&order);
    if kept.len() < needed {
        return Err(Error::NotWeaklyNonDegenerate {
            rank: kept.len(),
            needed,
        });
    }
    if let Some(dropped) = (0..all.len())
        .filter(|&i| degenerate[i])
        .find(|i| !kept.contains(i))
    {
        return Err(Error::Internal(format!(
            "forced column {:?} is dependent on other forced columns",
            all[dropped]
        )));
    }
    kept.sort_unstable();
    FormBasis::from_columns(
        vs,
        pivot,
        kept.into_iter().map(|i| all[i].clone()).collect(),
    )
}

/// The extended solver for weakly non-degenerate sets. With `columns`
/// given, that product set is used instead of [`select_minor`].
pub fn solve_weak(
    t: &MomentTable,
    vs: &VertexSet,
    pivot: usize,
    columns: Option<&FormBasis>,
) -> Result<Reconstruction> {
    let class = vs.classify();
    let ext = build_extended(vs)?;
    if class.kind == Degeneracy::Neither {
        return Err(Error::NotWeaklyNonDegenerate {
            rank: ext.rank(),
            needed: binomial(vs.len() - 1, vs.dim()),
        });
    }
    let selected;
    let basis = match columns {
        Some(b) => b,
        None => {
            selected = select_minor(&ext, vs, pivot)?;
            &selected
        }
    };
    solve_with_basis(t, basis)
}

/// Dispatches on the classification: the strong solver when it applies,
/// the extended one otherwise.
pub fn solve(t: &MomentTable, vs: &VertexSet, pivot: usize) -> Result<Reconstruction> {
    match vs.classify().kind {
        Degeneracy::Strong => solve_strong(t, vs, pivot),
        _ => solve_weak(t, vs, pivot, None),
    }
}

/// The dimension of the span of standard simplex measures on `vs`, with a
/// basis of non-degenerate simplices through `pivot`.
///
/// The basis is the leftmost-independent subset of the non-degenerate
/// through-pivot products; each degenerate simplex removes one.
pub fn dimension_and_basis(vs: &VertexSet, pivot: usize) -> Result<(usize, Vec<Simplex>)> {
    let class = vs.classify();
    if class.kind == Degeneracy::Neither {
        let ext = build_extended(vs)?;
        return Err(Error::NotWeaklyNonDegenerate {
            rank: ext.rank(),
            needed: binomial(vs.len() - 1, vs.dim()),
        });
    }
    let full = FormBasis::through_pivot(vs, pivot)?;
    let simplices = full.simplices();
    let mat = build_mat_s(&full)?;
    let candidates: Vec<usize> = (0..simplices.len())
        .filter(|&i| vs.spans(simplices[i].indices()))
        .collect();
    let kept = mat.independent_columns(&candidates);
    Ok((
        kept.len(),
        kept.into_iter().map(|i| simplices[i].clone()).collect(),
    ))
}
