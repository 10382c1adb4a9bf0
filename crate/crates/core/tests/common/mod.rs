#![allow(dead_code)]

use fanflip::generators::cross_polytope;
use fanflip::moves::random_z2_walk;
use fanflip::Z2Complex;

/// A centrally symmetric sphere of dimension `dim` reached by a seeded
/// random Z2-walk of `steps` moves from the cross polytope.
pub fn walked_sphere(dim: usize, steps: usize, seed: u64) -> Z2Complex {
    let start = cross_polytope(dim + 1).expect("cross polytope");
    random_z2_walk(&start, steps, seed).expect("walk").0
}

/// The walk corpus: `count` spheres of dimension `dim` with walk lengths
/// cycling through `0..=max_steps`.
pub fn corpus(dim: usize, count: usize, max_steps: usize, seed_base: u64) -> Vec<Z2Complex> {
    (0..count)
        .map(|i| {
            let steps = (i * 7 + 3) % (max_steps + 1);
            walked_sphere(dim, steps, seed_base + i as u64)
        })
        .collect()
}
