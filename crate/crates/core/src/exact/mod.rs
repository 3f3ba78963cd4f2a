//! Exact rational arithmetic and dense linear algebra.

mod matrix;
mod rat;

pub use matrix::RatMat;
pub use rat::{denominator_lcm, factorial, multinomial, rat, Rat};
