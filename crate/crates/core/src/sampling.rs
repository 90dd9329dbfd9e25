//! Seeded random points of the matrix polytopes, as convex combinations of
//! vertices with random positive rational weights.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::Rational;
use crate::matrices::IntMatrix;
use crate::ratmatrix::RatMatrix;

/// Largest numerator drawn for a weight before normalization.
pub const MAX_WEIGHT: i64 = 20;

/// `sum w_k V_k / sum w_k` over the given vertices with weights drawn from
/// `1..=MAX_WEIGHT`.
pub fn random_combination<R: Rng>(vertices: &[&IntMatrix], rng: &mut R) -> RatMatrix {
    assert!(!vertices.is_empty(), "need at least one vertex");
    let weights: Vec<i64> = vertices
        .iter()
        .map(|_| rng.gen_range(1..=MAX_WEIGHT))
        .collect();
    let total: i64 = weights.iter().sum();
    let mut acc = RatMatrix::zero(vertices[0].rows(), vertices[0].cols());
    for (v, w) in vertices.iter().zip(&weights) {
        acc = acc.add_scaled(&RatMatrix::from(*v), &Rational::frac(*w, total));
    }
    acc
}

/// Alternates interior points (all vertices with positive weight) and
/// boundary points (two or three vertices), deterministically from `seed`.
pub fn sample_points(vertices: &[IntMatrix], count: usize, seed: u64) -> Vec<RatMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let chosen: Vec<&IntMatrix> = if k % 2 == 0 {
                vertices.iter().collect()
            } else {
                let size = rng.gen_range(2..=3).min(vertices.len());
                vertices.choose_multiple(&mut rng, size).collect()
            };
            random_combination(&chosen, &mut rng)
        })
        .collect()
}
