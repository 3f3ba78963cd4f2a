//! Differential operators that turn `F_mu` into the generating function of
//! `rho * mu` for a homogeneous density `rho` of degree `delta`.

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::poly::{MultiIndex, Poly, Series};

/// Applies `rho(d/du)` term by term. The order drops by `delta`.
pub fn density_op(f: &Series, rho: &Poly) -> Result<Series> {
    if rho.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: rho.dim(),
        });
    }
    let delta = rho.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
    if f.order() < delta {
        return Err(Error::Invalid(format!(
            "series of order {} is too short for a density of degree {delta}",
            f.order()
        )));
    }
    let order = f.order() - delta;
    let mut out = Poly::zero(f.dim());
    for (k, c) in rho.terms() {
        let mut g = f.poly().clone();
        for (var, &e) in k.exps().iter().enumerate() {
            for _ in 0..e {
                g = g.partial(var);
            }
        }
        out = &out + &g.scale(c);
    }
    Ok(Series::new(out, order))
}

/// Multiplies the coefficient of `u^I` by `prod_{l=d+1}^{d+delta} (|I| + l)`,
/// i.e. applies `prod_l (E + l)` with `E` the Euler operator.
pub fn euler_op(f: &Series, d: usize, delta: u32) -> Series {
    let d = d as u32;
    let poly = Poly::from_terms(
        f.dim(),
        f.poly().terms().map(|(i, c)| {
            let n = i.degree();
            let factor: Rat = (d + 1..=d + delta).map(|l| Rat::from(n + l)).product();
            (i.clone(), c * factor)
        }),
    )
    .expect("same dimension");
    Series::new(poly, f.order())
}

/// Convenience for tests and the CLI: exponents of a single-term density.
pub fn monomial_density(exps: &[u32]) -> Poly {
    Poly::monomial(MultiIndex::new(exps.to_vec()), Rat::one())
}
