//! Factorization of maximal minors into products of `L(J)`.
//!
//! For a set of products `S`, the minor `det Mat(S)` equals a constant
//! `k(S)` times the product of `L(J)` over the `(d+1)`-subsets `J` that meet
//! every `T` in `S`. The constant depends only on the combinatorics of `S`.

use serde::Serialize;

use super::basis::{build_mat_s, lmat, lmat_minor, FormBasis};
use crate::error::Result;
use crate::exact::Rat;
use crate::geometry::{binomial, combinations, VertexSet};
use crate::random::{self, TestRng};

/// `(d+1)`-subsets of `0..n` meeting every column.
pub fn qualifying_sets(n: usize, d: usize, columns: &[Vec<usize>]) -> Vec<Vec<usize>> {
    combinations(n, d + 1)
        .into_iter()
        .filter(|j| columns.iter().all(|t| t.iter().any(|x| j.contains(x))))
        .collect()
}

/// `det Mat(S) / prod_J L(J)`, or `None` when some `L(J)` vanishes.
pub fn det_ratio(vs: &VertexSet, columns: &[Vec<usize>]) -> Result<Option<Rat>> {
    let pivot = vs.len() - 1;
    let basis = FormBasis::from_columns(vs, pivot, columns.to_vec())?;
    let det = build_mat_s(&basis)?.det()?;
    let l = lmat(vs);
    let mut prod = Rat::one();
    for j in qualifying_sets(vs.len(), vs.dim(), columns) {
        prod *= &lmat_minor(&l, &j);
    }
    Ok((!prod.is_zero()).then(|| det / prod))
}

/// Outcome of [`det_factor_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetFactorReport {
    pub columns: Vec<Vec<usize>>,
    /// Number of qualifying `J`.
    pub qualifying: usize,
    /// `(d+1) * qualifying` equals the degree `(N-d-1) * C(N-1,d)` of the minor.
    pub degree_matches: bool,
    /// `det / prod L(J)` per random configuration.
    pub ratios: Vec<Rat>,
    pub ratio_constant: bool,
    /// Per qualifying `J`: the minor vanished after making `J` affinely dependent.
    pub vanishing: Vec<(Vec<usize>, bool)>,
}

impl DetFactorReport {
    pub fn passed(&self) -> bool {
        self.degree_matches && self.ratio_constant && self.vanishing.iter().all(|(_, ok)| *ok)
    }
}

/// Checks the factorization for the combinatorial column set of `basis`
/// over `configs` random strongly non-degenerate configurations of the same
/// size, and checks that the minor vanishes whenever one qualifying `J` is
/// made affinely dependent.
pub fn det_factor_check(
    basis: &FormBasis,
    rng: &mut TestRng,
    configs: usize,
) -> Result<DetFactorReport> {
    let vs = basis.vertices();
    let (n, d) = (vs.len(), vs.dim());
    let columns = basis.columns().to_vec();
    let qualifying = qualifying_sets(n, d, &columns);
    let k = n - d - 1;
    let degree_matches = (d + 1) * qualifying.len() == k * binomial(n - 1, d);

    let mut ratios = Vec::with_capacity(configs);
    while ratios.len() < configs {
        let cfg = random::strong_set(rng, d, n);
        if let Some(r) = det_ratio(&cfg, &columns)? {
            ratios.push(r);
        }
    }
    let ratio_constant = ratios.windows(2).all(|w| w[0] == w[1]);

    let mut vanishing = Vec::with_capacity(qualifying.len());
    for j in &qualifying {
        let cfg = flatten(rng, d, n, j);
        let det = build_mat_s(&FormBasis::from_columns(&cfg, n - 1, columns.clone())?)?.det()?;
        vanishing.push((j.clone(), det.is_zero()));
    }
    Ok(DetFactorReport {
        columns,
        qualifying: qualifying.len(),
        degree_matches,
        ratios,
        ratio_constant,
        vanishing,
    })
}

/// A random configuration in which the points of `j` lie on a hyperplane:
/// the last one is moved to an affine combination of the others.
fn flatten(rng: &mut TestRng, d: usize, n: usize, j: &[usize]) -> VertexSet {
    loop {
        let mut pts: Vec<Vec<Rat>> = (0..n).map(|_| random::point(rng, d)).collect();
        let (last, rest) = j.split_last().expect("nonempty");
        let coeffs: Vec<Rat> = rest.iter().map(|_| random::rat(rng, 2, 3)).collect();
        let total: Rat = coeffs.iter().cloned().sum();
        let mut p = vec![Rat::zero(); d];
        for (c, &i) in coeffs.iter().zip(rest) {
            for (pk, x) in p.iter_mut().zip(&pts[i]) {
                *pk += c * x;
            }
        }
        let first = pts[rest[0]].clone();
        let fix = Rat::one() - total;
        for (pk, x) in p.iter_mut().zip(&first) {
            *pk += &fix * x;
        }
        pts[*last] = p;
        if let Ok(vs) = VertexSet::new(d, pts) {
            return vs;
        }
    }
}
