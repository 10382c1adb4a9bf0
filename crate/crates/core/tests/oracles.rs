//! Library results checked against slow, independent brute-force oracles
//! that work on plain vertex sets.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use fanflip::fan::{tucker_witness, FanLabelling};
use fanflip::generators::{cross_polytope, random_antipodal_labelling, simplex_boundary};
use fanflip::moves::{apply_move, enumerate_moves, enumerate_z2_moves, BistellarMove};
use fanflip::z2::antipode;
use fanflip::{Simplex, SimplicialComplex, Vertex, Z2Complex};

type Set = BTreeSet<Vertex>;

fn all_faces(k: &SimplicialComplex) -> BTreeSet<Set> {
    let mut out = BTreeSet::new();
    for f in k.facets() {
        let vs = f.vertices();
        for mask in 1u32..(1 << vs.len()) {
            out.insert((0..vs.len()).filter(|i| mask & (1 << i) != 0).map(|i| vs[i]).collect());
        }
    }
    out
}

fn oracle_link(faces: &BTreeSet<Set>, a: &Set) -> BTreeSet<Set> {
    faces
        .iter()
        .filter(|f| f.is_disjoint(a) && faces.contains(&f.union(a).copied().collect::<Set>()))
        .cloned()
        .collect()
}

fn proper_nonempty_subsets(b: &Set) -> BTreeSet<Set> {
    let vs: Vec<Vertex> = b.iter().copied().collect();
    (1u32..(1 << vs.len()) - 1)
        .map(|mask| (0..vs.len()).filter(|i| mask & (1 << i) != 0).map(|i| vs[i]).collect())
        .collect()
}

fn subsets_of_size(pool: &[Vertex], size: usize) -> Vec<Set> {
    if size == 0 {
        return vec![Set::new()];
    }
    if pool.len() < size {
        return vec![];
    }
    let mut out = subsets_of_size(&pool[1..], size - 1);
    for s in &mut out {
        s.insert(pool[0]);
    }
    out.extend(subsets_of_size(&pool[1..], size));
    out
}

/// Every `(A, B)` with `lk(A) = ∂B` and `B` not a face, found by trying all
/// candidate vertex sets `B` of the complementary size.
fn oracle_moves(k: &SimplicialComplex, fresh: Vertex) -> BTreeSet<(Set, Set)> {
    let faces = all_faces(k);
    let n = k.dim() as usize;
    let mut pool: Vec<Vertex> = k.vertices().into_iter().collect();
    pool.push(fresh);
    let mut out = BTreeSet::new();
    for a in &faces {
        let link = oracle_link(&faces, a);
        let size = n + 2 - a.len();
        for b in subsets_of_size(&pool, size) {
            if !b.is_disjoint(a) || faces.contains(&b) {
                continue;
            }
            let boundary = if b.len() == 1 { BTreeSet::new() } else { proper_nonempty_subsets(&b) };
            if link == boundary {
                out.insert((a.clone(), b));
            }
        }
    }
    out
}

fn as_set(s: &Simplex) -> Set {
    s.vertices().iter().copied().collect()
}

fn small_corpus() -> Vec<SimplicialComplex> {
    let mut out: Vec<SimplicialComplex> = (1..=3).map(|k| simplex_boundary(k).unwrap()).collect();
    out.push(cross_polytope(2).unwrap().into_complex());
    out.push(cross_polytope(3).unwrap().into_complex());
    for seed in 0..6 {
        out.push(common::walked_sphere(2, 3 + seed as usize, seed).into_complex());
    }
    out.push(common::walked_sphere(3, 4, 9).into_complex());
    out
}

#[test]
fn links_match_brute_force() {
    for k in small_corpus() {
        let faces = all_faces(&k);
        for a in &faces {
            let simplex = Simplex::new(a.iter().copied());
            let lib: BTreeSet<Set> = k.link(&simplex).unwrap().faces().iter().map(as_set).filter(|s| !s.is_empty()).collect();
            assert_eq!(lib, oracle_link(&faces, a), "link of {simplex}");
        }
    }
}

#[test]
fn move_enumeration_matches_brute_force() {
    for k in small_corpus() {
        let fresh = fanflip::moves::fresh_vertex(&k);
        let lib: BTreeSet<(Set, Set)> = enumerate_moves(&k).iter().map(|m| (as_set(&m.a), as_set(&m.b))).collect();
        assert_eq!(lib, oracle_moves(&k, fresh), "moves of {:?}", k.f_vector());
    }
}

#[test]
fn z2_enumeration_matches_pairs_of_plain_moves() {
    for seed in 0..5 {
        let m = common::walked_sphere(2 + seed as usize % 2, 6, seed);
        let fresh = fanflip::moves::fresh_vertex(m.complex());
        let mut expected = BTreeSet::new();
        for mv in enumerate_moves(m.complex()) {
            let mv = if mv.b.len() == 1 && !m.complex().has_vertex(mv.b.vertices()[0]) {
                BistellarMove::new(mv.a.clone(), vec![fresh])
            } else {
                mv
            };
            let (a, na) = (mv.a.clone(), antipode(&mv.a));
            if a <= na {
                continue;
            }
            // Both halves applied one after the other, then the action checked.
            let Ok((half, _)) = apply_move(m.complex(), &mv) else { continue };
            let Ok((both, _)) = apply_move(&half, &mv.antipodal()) else { continue };
            if Z2Complex::new(both).is_ok() {
                expected.insert(mv);
            }
        }
        let lib: BTreeSet<BistellarMove> = enumerate_z2_moves(&m).into_iter().collect();
        assert_eq!(lib, expected, "seed {seed}");
    }
}

/// Counts chains `σ₀ ⊂ σ₁ ⊂ … ⊂ σ_d` of nonempty faces by length.
fn oracle_chain_counts(k: &SimplicialComplex) -> Vec<u64> {
    let faces: Vec<Set> = all_faces(k).into_iter().collect();
    let mut by_top: BTreeMap<&Set, Vec<u64>> = BTreeMap::new();
    let mut sorted: Vec<&Set> = faces.iter().collect();
    sorted.sort_by_key(|f| f.len());
    for f in sorted {
        let mut counts = vec![0u64; f.len()];
        counts[0] = 1;
        for g in faces.iter().filter(|g| g.len() < f.len() && g.is_subset(f)) {
            for (len, c) in by_top[g].iter().enumerate() {
                counts[len + 1] += c;
            }
        }
        by_top.insert(f, counts);
    }
    let dim = k.dim() as usize;
    let mut total = vec![0u64; dim + 1];
    for counts in by_top.values() {
        for (len, c) in counts.iter().enumerate() {
            total[len] += c;
        }
    }
    total
}

#[test]
fn barycentric_face_counts_match_chain_counts() {
    for k in small_corpus() {
        assert_eq!(k.barycentric_subdivide().0.f_vector().counts, oracle_chain_counts(&k));
    }
    let octa = cross_polytope(3).unwrap();
    assert_eq!(octa.equivariant_sd().0.complex().f_vector().counts, oracle_chain_counts(octa.complex()));
}

#[test]
fn tucker_witness_agrees_with_edge_scan() {
    for seed in 0..30u64 {
        let dim = 2 + seed as usize % 2;
        let m = common::walked_sphere(dim, seed as usize % 15, seed);
        let l: FanLabelling = random_antipodal_labelling(&m, dim as i64, seed);
        let scan = m.complex().edges().into_iter().any(|(u, v)| l.get(u).unwrap() + l.get(v).unwrap() == num_rational::BigRational::from_integer(0.into()));
        match tucker_witness(&m, &l) {
            Ok((u, v)) => assert!(m.complex().edges().contains(&(u.min(v), u.max(v)))),
            Err(e) => panic!("{e}"),
        }
        assert!(scan);
        let over = FanLabelling::antipodal(m.complex().vertices().into_iter().filter(|v| *v > 0).map(|v| (v, dim as i64 + 1)));
        assert!(matches!(tucker_witness(&m, &over), Err(fanflip::Error::InvalidLabelling(_))));
    }
}
