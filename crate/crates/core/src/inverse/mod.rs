//! The inverse moment problem for a known vertex set.
//!
//! Moments up to order `N-d-1` determine the numerator `P` of the generating
//! function over the universal denominator `Phi_S`. Writing `P` in a basis of
//! products of `N-d-1` vertex forms gives the simplex weights directly.

mod basis;
mod detfactor;
mod solve;

pub use basis::{
    build_extended, build_mat_s, explicit_inverse, extended_columns, form_product, lmat,
    lmat_minor, numerator_degree, product_column, row_monomials, FormBasis,
};
pub use detfactor::{det_factor_check, det_ratio, qualifying_sets, DetFactorReport};
pub use solve::{
    dimension_and_basis, recover_numerator, select_minor, solve, solve_strong, solve_weak,
    solve_with_basis, weight_functionals, Reconstruction, ResidualTerm, WeightEntry,
};
