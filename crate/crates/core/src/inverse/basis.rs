//! Form products and the matrices built from them.
//!
//! A column is labelled by a set `T` of `N-d-1` form indices and holds the
//! coefficients of `homogenize(prod_{j in T} l_j, N-d-1)` in graded-lex order
//! of the monomials in `(u0, u1, ..., ud)`. It corresponds to the simplex on
//! the vertices outside `T`.

use crate::error::{Error, Result};
use crate::exact::{Rat, RatMat};
use crate::geometry::{binomial, combinations, Degeneracy, Simplex, VertexSet};
use crate::poly::{MultiIndex, Poly};

/// Degree `N-d-1` of the numerator and of every form product.
pub fn numerator_degree(vs: &VertexSet) -> Result<u32> {
    let (n, d) = (vs.len(), vs.dim());
    if n < d + 1 {
        return Err(Error::NotSpanning { dim: d });
    }
    Ok((n - d - 1) as u32)
}

/// A list of form-index subsets labelling matrix columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBasis {
    vertices: VertexSet,
    pivot: usize,
    columns: Vec<Vec<usize>>,
}

impl FormBasis {
    /// All products avoiding the pivot form, i.e. every simplex through the pivot.
    pub fn through_pivot(vs: &VertexSet, pivot: usize) -> Result<Self> {
        check_pivot(vs, pivot)?;
        let k = numerator_degree(vs)? as usize;
        let rest: Vec<usize> = (0..vs.len()).filter(|&i| i != pivot).collect();
        let columns = combinations(rest.len(), k)
            .into_iter()
            .map(|c| c.into_iter().map(|i| rest[i]).collect())
            .collect();
        Ok(FormBasis {
            vertices: vs.clone(),
            pivot,
            columns,
        })
    }

    /// An explicit column choice; each subset must be sorted, of size `N-d-1`
    /// and distinct from the others, and there must be `C(N-1,d)` of them.
    pub fn from_columns(vs: &VertexSet, pivot: usize, columns: Vec<Vec<usize>>) -> Result<Self> {
        check_pivot(vs, pivot)?;
        let k = numerator_degree(vs)? as usize;
        let want = binomial(vs.len() - 1, vs.dim());
        if columns.len() != want {
            return Err(Error::Invalid(format!(
                "a basis needs {want} form products, got {}",
                columns.len()
            )));
        }
        for (i, c) in columns.iter().enumerate() {
            if c.len() != k {
                return Err(Error::Invalid(format!(
                    "product {c:?} has {} forms; expected {k}",
                    c.len()
                )));
            }
            if c.windows(2).any(|w| w[0] >= w[1]) || c.iter().any(|&j| j >= vs.len()) {
                return Err(Error::Invalid(format!(
                    "product {c:?} must list distinct increasing form indices below {}",
                    vs.len()
                )));
            }
            if columns[..i].contains(c) {
                return Err(Error::Invalid(format!("product {c:?} appears twice")));
            }
        }
        Ok(FormBasis {
            vertices: vs.clone(),
            pivot,
            columns,
        })
    }

    /// Columns given by 1-based positions in the extended matrix.
    pub fn from_extended_numbers(vs: &VertexSet, pivot: usize, numbers: &[usize]) -> Result<Self> {
        let all = extended_columns(vs)?;
        let columns = numbers
            .iter()
            .map(|&c| {
                c.checked_sub(1)
                    .and_then(|i| all.get(i).cloned())
                    .ok_or_else(|| {
                        Error::Invalid(format!("column number {c} outside 1..={}", all.len()))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        FormBasis::from_columns(vs, pivot, columns)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Whether no product involves the pivot form.
    pub fn is_through_pivot(&self) -> bool {
        self.columns.iter().all(|c| !c.contains(&self.pivot))
    }

    /// The simplex complementary to each column.
    pub fn simplices(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        self.columns
            .iter()
            .map(|c| Simplex::from_complement(c, n))
            .collect()
    }

    /// 1-based positions of the columns in the extended matrix.
    pub fn extended_numbers(&self) -> Vec<usize> {
        let all = extended_columns(&self.vertices).expect("validated on construction");
        self.columns
            .iter()
            .map(|c| all.iter().position(|a| a == c).expect("valid subset") + 1)
            .collect()
    }
}

fn check_pivot(vs: &VertexSet, pivot: usize) -> Result<()> {
    if pivot >= vs.len() {
        return Err(Error::Invalid(format!(
            "pivot {pivot} out of range (0..{})",
            vs.len()
        )));
    }
    Ok(())
}

/// Every `(N-d-1)`-subset of the `N` forms, in lexicographic order.
pub fn extended_columns(vs: &VertexSet) -> Result<Vec<Vec<usize>>> {
    let k = numerator_degree(vs)? as usize;
    Ok(combinations(vs.len(), k))
}

/// Monomials of degree `N-d-1` in `d+1` variables; the row labels.
pub fn row_monomials(vs: &VertexSet) -> Result<Vec<MultiIndex>> {
    Ok(MultiIndex::of_degree(vs.dim() + 1, numerator_degree(vs)?))
}

/// `prod_{j in T} l_j` as a polynomial in `u1..ud`.
pub fn form_product(vs: &VertexSet, subset: &[usize]) -> Poly {
    subset
        .iter()
        .fold(Poly::one(vs.dim()), |acc, &j| &acc * &vs.form(j))
}

/// Homogenized coefficient column of one product.
pub fn product_column(vs: &VertexSet, subset: &[usize]) -> Result<Vec<Rat>> {
    let k = numerator_degree(vs)?;
    let h = form_product(vs, subset).homogenize(k)?;
    Ok(row_monomials(vs)?.iter().map(|m| h.coeff(m)).collect())
}

fn matrix_of(vs: &VertexSet, columns: &[Vec<usize>]) -> Result<RatMat> {
    let rows = row_monomials(vs)?.len();
    let cols = columns
        .iter()
        .map(|c| product_column(vs, c))
        .collect::<Result<Vec<_>>>()?;
    RatMat::from_columns(rows, &cols)
}

/// The square matrix whose columns are the basis products.
pub fn build_mat_s(basis: &FormBasis) -> Result<RatMat> {
    matrix_of(&basis.vertices, &basis.columns)
}

/// All `C(N, d+1)` form products as columns, ordered as [`extended_columns`].
pub fn build_extended(vs: &VertexSet) -> Result<RatMat> {
    matrix_of(vs, &extended_columns(vs)?)
}

/// The `(d+1) x N` matrix with first row all ones and row `k` holding
/// `-v_i[k]`, so column `i` is the homogenized form `l_i`.
pub fn lmat(vs: &VertexSet) -> RatMat {
    let d = vs.dim();
    let cols: Vec<Vec<Rat>> = vs
        .points()
        .iter()
        .map(|v| {
            let mut c = vec![Rat::one()];
            c.extend(v.iter().map(|x| -x));
            c
        })
        .collect();
    RatMat::from_columns(d + 1, &cols).expect("uniform column length")
}

/// `L(J)`, the determinant of the `L` columns listed in `j` (in that order).
pub fn lmat_minor(l: &RatMat, j: &[usize]) -> Rat {
    l.select_columns(j).det().expect("d+1 columns")
}

/// The inverse of [`build_mat_s`] from the minors of `L`.
///
/// The row for a product `T` is evaluation at the common zero `z` of the
/// forms `l_i`, `i` the non-pivot vertices outside `T`, divided by
/// `prod_{k in T} l_k(z)`. The coordinates of `z` are the cofactors of
/// `det[u | L_i]` along its first column.
pub fn explicit_inverse(basis: &FormBasis) -> Result<RatMat> {
    let vs = &basis.vertices;
    let class = vs.classify();
    if class.kind != Degeneracy::Strong {
        return Err(Error::NotStronglyNonDegenerate {
            degenerate: class
                .degenerate
                .iter()
                .map(|s| s.indices().to_vec())
                .collect(),
        });
    }
    if !basis.is_through_pivot() {
        return Err(Error::Invalid(
            "the explicit inverse needs products avoiding the pivot form".into(),
        ));
    }
    let d = vs.dim();
    let l = lmat(vs);
    let monomials = row_monomials(vs)?;
    let mut out = RatMat::zeros(basis.len(), monomials.len());
    for (r, t) in basis.columns.iter().enumerate() {
        let others: Vec<usize> = (0..vs.len())
            .filter(|&i| i != basis.pivot && !t.contains(&i))
            .collect();
        let li = l.select_columns(&others);
        let z: Vec<Rat> = (0..=d)
            .map(|j| {
                let keep: Vec<usize> = (0..=d).filter(|&i| i != j).collect();
                let minor = li.select_rows(&keep).det().expect("square");
                if j % 2 == 0 {
                    minor
                } else {
                    -minor
                }
            })
            .collect();
        let denom = t.iter().fold(Rat::one(), |acc, &k| {
            let mut cols = vec![k];
            cols.extend_from_slice(&others);
            acc * lmat_minor(&l, &cols)
        });
        for (c, m) in monomials.iter().enumerate() {
            let num = m
                .exps()
                .iter()
                .zip(&z)
                .fold(Rat::one(), |acc, (&e, zj)| acc * zj.pow(e));
            out.set(r, c, num / &denom);
        }
    }
    Ok(out)
}
