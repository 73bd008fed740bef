//! Seeded random scalars, vectors and subspaces for instance generation.

use rand::{Rng, RngCore};

use crate::field::{Field, Scalar};
use crate::linalg::Subspace;

pub fn random_scalar(field: Field, rng: &mut dyn RngCore) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn random_nonzero_scalar(field: Field, rng: &mut dyn RngCore) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A vector whose entries are nonzero with probability `density`.
pub fn random_vector(field: Field, n: usize, density: f64, rng: &mut dyn RngCore) -> Vec<Scalar> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                random_nonzero_scalar(field, rng)
            } else {
                field.zero()
            }
        })
        .collect()
}

/// Span of up to `max_vectors` sparse random vectors.
pub fn random_subspace(field: Field, n: usize, max_vectors: usize, rng: &mut dyn RngCore) -> Subspace {
    let k = rng.gen_range(0..=max_vectors);
    let density = if n == 0 { 0.0 } else { rng.gen_range(1.0 / n as f64..=1.0) };
    let vs: Vec<Vec<Scalar>> = (0..k).map(|_| random_vector(field, n, density, rng)).collect();
    Subspace::from_vectors(field, n, &vs)
}
