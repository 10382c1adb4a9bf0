//! Canonical complexes and labellings.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::fan::FanLabelling;
use crate::z2::Z2Complex;

/// Rejection-sampling attempts before [`random_fan_labelling`] gives up.
pub const MAX_LABELLING_ATTEMPTS: usize = 200;

/// `∂Δ^k` on vertices `1..=k+1`.
pub fn simplex_boundary(k: usize) -> Result<SimplicialComplex> {
    if k < 1 {
        return Err(Error::InvalidDimension(k));
    }
    let full = Simplex::new(1..=(k as Vertex + 1));
    Ok(SimplicialComplex::simplex_boundary_of(&full))
}

/// Boundary of the `k`-dimensional cross polytope on `±1..=±k`: every
/// choice of one vertex from each antipodal pair is a facet.
pub fn cross_polytope(k: usize) -> Result<Z2Complex> {
    if k < 1 {
        return Err(Error::InvalidDimension(k));
    }
    let mut facets = BTreeSet::new();
    for signs in 0u32..(1 << k) {
        facets.insert(Simplex::new((1..=k as Vertex).map(|i| {
            if signs & (1 << (i - 1)) != 0 {
                -i
            } else {
                i
            }
        })));
    }
    Ok(Z2Complex::trusted(SimplicialComplex::from_antichain(facets)))
}

/// `λ(±i) = ±i` on the cross polytope.
pub fn canonical_cross_labelling(k: usize) -> Result<FanLabelling> {
    if k < 1 {
        return Err(Error::InvalidDimension(k));
    }
    Ok(FanLabelling::antipodal((1..=k as Vertex).map(|i| (i, i as i64))))
}

/// A random Fan labelling with values in `±1..=±bound`, reproducible from
/// `seed`.
///
/// Antipodal pairs are labelled one at a time in random order, each drawing
/// uniformly from the labels that do not complete a complementary edge with
/// an already-labelled neighbour. A dead end discards the attempt.
pub fn random_fan_labelling(m: &Z2Complex, bound: i64, seed: u64) -> Result<FanLabelling> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let adj = m.complex().adjacency();
    let mut pairs: Vec<Vertex> = adj.keys().copied().filter(|v| *v > 0).collect();
    let options: Vec<i64> = (1..=bound.max(0)).flat_map(|l| [l, -l]).collect();
    for _ in 0..MAX_LABELLING_ATTEMPTS {
        pairs.shuffle(&mut rng);
        let mut labels: BTreeMap<Vertex, i64> = BTreeMap::new();
        let mut ok = true;
        for &v in &pairs {
            let allowed: Vec<i64> = options
                .iter()
                .copied()
                .filter(|&l| {
                    // λ(v) = l and λ(-v) = -l must not complete a complementary edge
                    let clash = |w: &Vertex, want: i64| labels.get(w).is_some_and(|x| *x == want);
                    !adj[&v].iter().any(|w| clash(w, -l)) && !adj[&-v].iter().any(|w| clash(w, l))
                })
                .collect();
            let Some(&l) = allowed.choose(&mut rng) else {
                ok = false;
                break;
            };
            labels.insert(v, l);
            labels.insert(-v, -l);
        }
        if ok {
            return Ok(FanLabelling::from_integers(labels));
        }
    }
    Err(Error::GenerationFailed(MAX_LABELLING_ATTEMPTS))
}

/// A random antipodal labelling with values in `±1..=±bound`, with no
/// further constraint (the input shape of Tucker's lemma).
pub fn random_antipodal_labelling(m: &Z2Complex, bound: i64, seed: u64) -> FanLabelling {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FanLabelling::antipodal(
        m.complex()
            .vertices()
            .into_iter()
            .filter(|v| *v > 0)
            .map(|v| {
                let l = rng.gen_range(1..=bound);
                (v, if rng.gen_bool(0.5) { l } else { -l })
            })
            .collect::<Vec<_>>(),
    )
}
