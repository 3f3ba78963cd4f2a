//! Rational generating functions of simplicial measures.
//!
//! The normalized moment generating function of `mu` is
//! `F_mu(u) = sum_I (|I|+d)!/I! * m_I(mu) u^I`. For the uniform measure on a
//! simplex it equals `d! Vol / prod_v (1 - <v, u>)`; sums of such terms and
//! the vertex formulas of [`brion`] give the general case.

pub mod brion;
pub mod operators;
mod ratfun;

pub use brion::{brion_axial, brion_f, brion_identity_residuals, SimplePolytopeSpec, TangentCone};
pub use operators::{density_op, euler_op};
pub use ratfun::{measure_f, moments_to_series, series_to_moments, simplex_f, LinearForm, RatFun};
