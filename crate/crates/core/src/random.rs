//! Seeded generators for property suites and benchmarks.
//!
//! All draws come from ChaCha8, so a seed fixes every case exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::Rat;
use crate::geometry::{Degeneracy, Simplex, VertexSet};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[-bound, bound]` with denominator at most `max_den`.
pub fn rat(rng: &mut TestRng, bound: i64, max_den: i64) -> Rat {
    let q = rng.random_range(1..=max_den);
    let p = rng.random_range(-bound * q..=bound * q);
    Rat::new(p, q)
}

/// Coordinates in `[-5, 5]` with denominators up to 4.
pub fn point(rng: &mut TestRng, d: usize) -> Vec<Rat> {
    (0..d).map(|_| rat(rng, 5, 4)).collect()
}

/// Vertices of a random non-degenerate `d`-simplex.
pub fn simplex_points(rng: &mut TestRng, d: usize) -> VertexSet {
    loop {
        let pts = (0..=d).map(|_| point(rng, d)).collect();
        if let Ok(vs) = VertexSet::new(d, pts) {
            let all: Vec<usize> = (0..=d).collect();
            if !vs.volume(&Simplex::new(all)).is_zero() {
                return vs;
            }
        }
    }
}

/// `n` points in `R^d` with every `(d+1)`-subset spanning.
pub fn strong_set(rng: &mut TestRng, d: usize, n: usize) -> VertexSet {
    loop {
        let pts = (0..n).map(|_| point(rng, d)).collect();
        if let Ok(vs) = VertexSet::new(d, pts) {
            if vs.classify().kind == Degeneracy::Strong {
                return vs;
            }
        }
    }
}

/// Small nonzero-biased rational weights.
pub fn weights(rng: &mut TestRng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| rat(rng, 6, 3)).collect()
}

/// A direction with every coordinate nonzero.
pub fn direction(rng: &mut TestRng, d: usize) -> Vec<Rat> {
    (0..d)
        .map(|_| loop {
            let x = rat(rng, 7, 5);
            if !x.is_zero() {
                break x;
            }
        })
        .collect()
}
