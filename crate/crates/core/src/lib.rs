//! Exact moment generating functions of signed simplicial measures and the
//! inverse moment problem for polytopes with known vertex sets.
//!
//! Everything is computed over arbitrary-precision rationals. Vertex and
//! simplex indices are 0-based throughout.

pub mod chambers;
pub mod error;
pub mod exact;
pub mod fantappie;
pub mod geometry;
pub mod inverse;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Rat, RatMat};
pub use poly::{MultiIndex, Poly, Series};
