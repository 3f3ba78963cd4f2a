use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("singular matrix (rank {rank})")]
    Singular { rank: usize },

    #[error("vertex set does not affinely span R^{dim}")]
    NotSpanning { dim: usize },

    #[error("vertex set is not strongly non-degenerate (degenerate simplices {degenerate:?}); use the weak solver")]
    NotStronglyNonDegenerate { degenerate: Vec<Vec<usize>> },

    #[error("vertex set is not weakly non-degenerate: form products have rank {rank} < {needed}")]
    NotWeaklyNonDegenerate { rank: usize, needed: usize },

    #[error("simplex {0:?} is degenerate")]
    DegenerateSimplex(Vec<usize>),

    #[error("moment table is incomplete; missing indices {missing:?}")]
    IncompleteMoments { missing: Vec<Vec<u32>> },

    /// Some edge vector of the tangent cone at `vertex` is orthogonal to the direction.
    #[error("degenerate direction: an edge pairing vanishes at vertex {vertex}")]
    DegenerateDirection { vertex: usize },

    #[error("density polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("term of degree {degree} exceeds the bound {bound}")]
    DegreeExceeded { degree: u32, bound: u32 },

    #[error("reconstruction puts nonzero weight on degenerate simplices {0:?}")]
    SingularReconstruction(Vec<Vec<usize>>),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
