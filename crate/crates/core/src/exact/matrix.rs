//! Dense rational matrices with fraction-free (Bareiss) elimination.
//!
//! Every routine first clears denominators row by row, so the elimination
//! itself runs over big integers. The Bareiss update
//! `m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev` divides exactly,
//! because each intermediate entry is a minor of the scaled input.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{denominator_lcm, Rat};
use crate::error::{Error, Result};

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RatMat {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        RatMat::new(n, cols, entries)
    }

    /// Convenience for integer tables.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        RatMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Result<Self> {
        let mut m = RatMat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn select_columns(&self, cols: &[usize]) -> RatMat {
        let mut m = RatMat::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMat {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(self.row(r));
        }
        RatMat {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> RatMat {
        let mut m = RatMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn scale(&self, k: &Rat) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut m = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * m.cols + j;
                        m.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let (mut m, scales) = self.integer_rows(None);
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = exact_div(v, &prev);
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let scale: BigInt = scales.iter().product();
        let det = Rat::new(m[n - 1][n - 1].clone(), scale);
        Ok(if negate { -det } else { det })
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows(None);
        echelonize(&mut m, self.cols).len()
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let rhs = RatMat::from_columns(self.rows, &[b.to_vec()])?;
        Ok(self.solve_many(&rhs)?.column(0))
    }

    /// Exact inverse.
    pub fn inverse(&self) -> Result<RatMat> {
        self.solve_many(&RatMat::identity(self.rows))
    }

    /// Solves `self * X = rhs` for a block of right-hand sides.
    pub fn solve_many(&self, rhs: &RatMat) -> Result<RatMat> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let n = self.rows;
        let k = rhs.cols;
        let (mut m, _) = self.integer_rows(Some(rhs));
        let pivots = echelonize(&mut m, n);
        if pivots.len() < n {
            return Err(Error::Singular { rank: pivots.len() });
        }
        // Upper triangular with pivots on the diagonal; back-substitute exactly.
        let mut x = RatMat::zeros(n, k);
        for col in 0..k {
            for i in (0..n).rev() {
                let mut acc = Rat::from_int(m[i][n + col].clone());
                for j in i + 1..n {
                    if !m[i][j].is_zero() {
                        acc -= Rat::from_int(m[i][j].clone()) * x.get(j, col);
                    }
                }
                x.set(i, col, acc / Rat::from_int(m[i][i].clone()));
            }
        }
        Ok(x)
    }

    /// Greedy leftmost-independent selection: scans `order` and keeps each
    /// column that is not in the span of those kept so far.
    pub fn independent_columns(&self, order: &[usize]) -> Vec<usize> {
        let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
        let mut kept = Vec::new();
        for &c in order {
            let col = self.column(c);
            let lcm = denominator_lcm(&col);
            let mut v: Vec<BigInt> = col.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            for (p, b) in &basis {
                if v[*p].is_zero() {
                    continue;
                }
                let f = v[*p].clone();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = &b[*p] * &*vi - &f * bi;
                }
                make_primitive(&mut v);
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                make_primitive(&mut v);
                basis.push((p, v));
                kept.push(c);
            }
        }
        kept
    }

    /// Rows scaled to integers, optionally augmented with `rhs` (scaled by the same factor).
    fn integer_rows(&self, rhs: Option<&RatMat>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let extra: &[Rat] = rhs.map_or(&[], |m| m.row(r));
            let lcm = denominator_lcm(self.row(r).iter().chain(extra));
            let row: Vec<BigInt> = self
                .row(r)
                .iter()
                .chain(extra)
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect();
            rows.push(row);
            scales.push(lcm);
        }
        (rows, scales)
    }
}

/// Fraction-free row echelon form restricted to the first `pivot_cols`
/// columns (further columns are carried along). Pivot rows end up at the
/// top, in order; returns the pivot column of each.
fn echelonize(m: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = exact_div(v, &prev);
            }
            m[i][c] = BigInt::zero();
        }
        // Entries of the pivot row left of later pivots stay as they are; the
        // divisor for the next step is this pivot.
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn exact_div(v: BigInt, d: &BigInt) -> BigInt {
    let (q, rem) = v.div_rem(d);
    debug_assert!(rem.is_zero(), "Bareiss division was inexact");
    q
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        self.get(r, c)
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
