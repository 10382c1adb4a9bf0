//! Bistellar moves `κ(A, B)` and their antipodal pairs `κ̃(A, B)`.
//!
//! A move is admissible in a pure `n`-complex `K` when `A ∈ K`,
//! `lk(A) = ∂B` and `B ∉ K`; it replaces `A ⋆ ∂B` by `∂A ⋆ B`. When `A` is a
//! facet, `B` is a single vertex not yet in `K`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::z2::{antipode, has_antipodal_pair, Z2Complex};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BistellarMove {
    pub a: Simplex,
    pub b: Simplex,
}

impl BistellarMove {
    pub fn new(a: impl Into<Simplex>, b: impl Into<Simplex>) -> Self {
        BistellarMove { a: a.into(), b: b.into() }
    }

    /// `κ(B, A)`.
    pub fn inverse(&self) -> BistellarMove {
        BistellarMove { a: self.b.clone(), b: self.a.clone() }
    }

    /// `κ(-A, -B)`.
    pub fn antipodal(&self) -> BistellarMove {
        BistellarMove { a: antipode(&self.a), b: antipode(&self.b) }
    }

    /// Dimension `r` of `A`.
    pub fn r(&self) -> usize {
        self.a.len() - 1
    }

    /// Change of `f_k` caused by the move, for `k = 0..=n`.
    ///
    /// Faces containing `A` with a proper part of `B` disappear; faces
    /// containing `B` with a proper part of `A` appear.
    pub fn f_delta(&self) -> Vec<i64> {
        let (p, q) = (self.a.len(), self.b.len());
        let n = p + q - 2;
        (0..=n)
            .map(|k| binomial(p, (k + 1).wrapping_sub(q)) - binomial(q, (k + 1).wrapping_sub(p)))
            .collect()
    }
}

impl fmt::Display for BistellarMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "κ({}, {})", self.a, self.b)
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// Smallest positive `k` such that neither `k` nor `-k` is a vertex.
pub fn fresh_vertex(k: &SimplicialComplex) -> Vertex {
    let used: HashSet<Vertex> = k.vertices().into_iter().map(|v| v.abs()).collect();
    (1..).find(|v| !used.contains(v)).expect("vertex ids exhausted")
}

/// Facets of `K` containing each nonempty face.
struct FaceIndex<'a> {
    cofacets: HashMap<Simplex, Vec<&'a Simplex>>,
}

impl<'a> FaceIndex<'a> {
    fn new(k: &'a SimplicialComplex) -> Self {
        let mut cofacets: HashMap<Simplex, Vec<&'a Simplex>> = HashMap::new();
        for f in k.facets() {
            for face in f.faces() {
                cofacets.entry(face).or_default().push(f);
            }
        }
        FaceIndex { cofacets }
    }

    fn contains(&self, a: &Simplex) -> bool {
        self.cofacets.contains_key(a)
    }
}

/// The `B` with `lk(A) = ∂B`, if the link is a simplex boundary. Returns
/// `Some(empty)` when `A` is a facet (the caller supplies a fresh vertex).
fn link_apex(cofacets: &[&Simplex], a: &Simplex, n: usize) -> Option<Simplex> {
    if cofacets.iter().any(|f| f.len() != n + 1) {
        return None;
    }
    if a.len() == n + 1 {
        return Some(Simplex::empty());
    }
    let want = n + 2 - a.len();
    if cofacets.len() != want {
        return None;
    }
    let b = Simplex::new(cofacets.iter().flat_map(|f| f.difference(a).vertices().to_vec()));
    (b.len() == want).then_some(b)
}

fn check_admissible(k: &SimplicialComplex, m: &BistellarMove) -> Result<()> {
    let bad = || Error::MoveNotAdmissible { a: m.a.clone(), b: m.b.clone() };
    if m.a.is_empty() || m.b.is_empty() || !m.a.is_disjoint(&m.b) {
        return Err(bad());
    }
    if !k.is_pure() || m.a.len() + m.b.len() != k.dim() as usize + 2 {
        return Err(bad());
    }
    let cofacets: Vec<&Simplex> = k.cofacets(&m.a).collect();
    if cofacets.is_empty() {
        return Err(bad());
    }
    let n = k.dim() as usize;
    match link_apex(&cofacets, &m.a, n) {
        Some(apex) if apex.is_empty() => {
            let v = m.b.vertices()[0];
            if v == 0 || k.has_vertex(v) {
                return Err(bad());
            }
        }
        Some(apex) => {
            if apex != m.b || k.contains_face(&m.b) {
                return Err(bad());
            }
        }
        None => return Err(bad()),
    }
    Ok(())
}

/// The admissible move with source `A`, if any. A facet gets the fresh
/// vertex from [`fresh_vertex`].
pub fn find_move(k: &SimplicialComplex, a: &Simplex) -> Result<Option<BistellarMove>> {
    if a.is_empty() || !k.contains_face(a) {
        return Err(Error::FaceNotPresent(a.clone()));
    }
    if !k.is_pure() {
        return Ok(None);
    }
    let cofacets: Vec<&Simplex> = k.cofacets(a).collect();
    Ok(match link_apex(&cofacets, a, k.dim() as usize) {
        None => None,
        Some(apex) if apex.is_empty() => {
            Some(BistellarMove { a: a.clone(), b: Simplex::from([fresh_vertex(k)]) })
        }
        Some(apex) => (!k.contains_face(&apex)).then(|| BistellarMove { a: a.clone(), b: apex }),
    })
}

/// All admissible moves, sorted by `(dim A, A)`.
pub fn enumerate_moves(k: &SimplicialComplex) -> Vec<BistellarMove> {
    if !k.is_pure() || k.dim() < 0 {
        return Vec::new();
    }
    let n = k.dim() as usize;
    let index = FaceIndex::new(k);
    let fresh = fresh_vertex(k);
    let mut out = Vec::new();
    for (a, cofacets) in &index.cofacets {
        let Some(apex) = link_apex(cofacets, a, n) else { continue };
        if apex.is_empty() {
            out.push(BistellarMove { a: a.clone(), b: Simplex::from([fresh]) });
        } else if !index.contains(&apex) {
            out.push(BistellarMove { a: a.clone(), b: apex });
        }
    }
    out.sort_by(|x, y| x.a.len().cmp(&y.a.len()).then_with(|| x.a.cmp(&y.a)));
    out
}

/// Applies `κ(A, B)`; returns the new complex and the inverse move.
pub fn apply_move(k: &SimplicialComplex, m: &BistellarMove) -> Result<(SimplicialComplex, BistellarMove)> {
    check_admissible(k, m)?;
    Ok((apply_unchecked(k, m), m.inverse()))
}

fn apply_unchecked(k: &SimplicialComplex, m: &BistellarMove) -> SimplicialComplex {
    let mut facets: BTreeSet<Simplex> = k.facets().clone();
    for part in m.b.boundary_facets() {
        facets.remove(&m.a.union(&part));
    }
    for part in m.a.boundary_facets() {
        facets.insert(part.union(&m.b));
    }
    SimplicialComplex::from_antichain(facets)
}

fn new_facets(m: &BistellarMove) -> impl Iterator<Item = Simplex> + '_ {
    m.a.boundary_facets().map(move |p| p.union(&m.b))
}

/// Applies the pair `κ(A, B), κ(-A, -B)`; returns the result and the
/// inverse pair `κ̃(B, A)`.
pub fn apply_z2_move(m_complex: &Z2Complex, m: &BistellarMove) -> Result<(Z2Complex, BistellarMove)> {
    let k = m_complex.complex();
    if m.b.len() == 1 && !k.has_vertex(m.b.vertices()[0]) && k.has_vertex(-m.b.vertices()[0]) {
        return Err(Error::VertexCollision(-m.b.vertices()[0]));
    }
    check_admissible(k, m)?;
    let first = apply_unchecked(k, m);
    if let Some(f) = new_facets(m).find(has_antipodal_pair) {
        return Err(Error::ActionNotFree(f));
    }
    let mirror = m.antipodal();
    if check_admissible(&first, &mirror).is_err() {
        return Err(Error::InterferingAntipodalMove { a: m.a.clone(), b: m.b.clone() });
    }
    let second = apply_unchecked(&first, &mirror);
    Ok((Z2Complex::trusted(second), m.inverse()))
}

/// Admissible Z2-moves, one representative per antipodal pair: the
/// representative is the member whose `A` is lexicographically larger.
/// Fresh vertices are allocated as `±k` with the positive id on `B`.
pub fn enumerate_z2_moves(m_complex: &Z2Complex) -> Vec<BistellarMove> {
    let k = m_complex.complex();
    enumerate_moves(k)
        .into_iter()
        .filter(|m| m.a > antipode(&m.a))
        .filter(|m| z2_admissible(k, m))
        .collect()
}

/// Whether `κ(-A, -B)` stays admissible after `κ(A, B)` and the result is
/// free. In a free equivariant complex the mirror move is admissible before
/// the first flip, and the first flip only adds facets of the form
/// `(A \ a) ∪ B`, so it suffices to inspect those.
fn z2_admissible(_k: &SimplicialComplex, m: &BistellarMove) -> bool {
    let neg_a = antipode(&m.a);
    let neg_b = antipode(&m.b);
    new_facets(m).all(|f| !has_antipodal_pair(&f) && !neg_a.is_subset(&f) && !neg_b.is_subset(&f))
}

/// One record of a [`FlipSequence`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FlipStep {
    pub a: Simplex,
    pub b: Simplex,
    /// Vertices created by this step (`[u]`, or `[u, -u]` for a Z2 pair).
    pub fresh: Vec<Vertex>,
}

impl FlipStep {
    pub fn to_move(&self) -> BistellarMove {
        BistellarMove { a: self.a.clone(), b: self.b.clone() }
    }
}

/// A replayable log of moves together with digests of both endpoints.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FlipSequence {
    /// Each step is a Z2 pair `κ̃(A, B)` rather than a single move.
    pub z2: bool,
    pub source_digest: String,
    pub target_digest: String,
    pub steps: Vec<FlipStep>,
}

impl FlipSequence {
    pub fn new(source: &SimplicialComplex, z2: bool) -> Self {
        let d = digest(source);
        FlipSequence { z2, source_digest: d.clone(), target_digest: d, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn moves(&self) -> impl Iterator<Item = BistellarMove> + '_ {
        self.steps.iter().map(FlipStep::to_move)
    }

    /// Records `m` applied to `before`, producing `after`.
    pub fn push(&mut self, before: &SimplicialComplex, m: &BistellarMove, after: &SimplicialComplex) {
        let mut fresh = Vec::new();
        if m.b.len() == 1 && !before.has_vertex(m.b.vertices()[0]) {
            fresh.push(m.b.vertices()[0]);
            if self.z2 {
                fresh.push(-m.b.vertices()[0]);
            }
        }
        self.steps.push(FlipStep { a: m.a.clone(), b: m.b.clone(), fresh });
        self.target_digest = digest(after);
    }

    pub fn truncate(&mut self, len: usize, end: &SimplicialComplex) {
        self.steps.truncate(len);
        self.target_digest = digest(end);
    }

    /// Applies every step to `source`, checking admissibility.
    pub fn replay(&self, source: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mut cur = source.clone();
        for (step, m) in self.moves().enumerate() {
            let next = if self.z2 {
                apply_z2_move(&Z2Complex::trusted(cur), &m).map(|(c, _)| c.into_complex())
            } else {
                apply_move(&cur, &m).map(|(c, _)| c)
            };
            cur = next.map_err(|_| Error::CorruptSequence { step })?;
        }
        Ok(cur)
    }

    /// The sequence that undoes this one.
    pub fn inverted(&self) -> FlipSequence {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| FlipStep { a: s.b.clone(), b: s.a.clone(), fresh: Vec::new() })
            .collect();
        FlipSequence {
            z2: self.z2,
            source_digest: self.target_digest.clone(),
            target_digest: self.source_digest.clone(),
            steps,
        }
    }
}

/// SHA-256 of the canonical facet list, hex encoded.
pub fn digest(k: &SimplicialComplex) -> String {
    let facets: Vec<&Simplex> = k.facets().iter().collect();
    let bytes = serde_json::to_vec(&facets).expect("facets serialize");
    hex::encode(Sha256::digest(&bytes))
}

/// `steps` uniformly chosen admissible Z2-moves, reproducible from `seed`.
pub fn random_z2_walk(m: &Z2Complex, steps: usize, seed: u64) -> Result<(Z2Complex, FlipSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = m.clone();
    let mut seq = FlipSequence::new(m.complex(), true);
    for _ in 0..steps {
        let moves = enumerate_z2_moves(&cur);
        if moves.is_empty() {
            return Err(Error::NoAdmissibleMove);
        }
        let mv = &moves[rng.gen_range(0..moves.len())];
        let (next, _) = apply_z2_move(&cur, mv)?;
        seq.push(cur.complex(), mv, next.complex());
        cur = next;
    }
    Ok((cur, seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cross_polytope, simplex_boundary};

    fn k(facets: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec())).unwrap()
    }

    #[test]
    fn find_move_examples() {
        let t = simplex_boundary(3).unwrap();
        let m = find_move(&t, &Simplex::from([1, 2, 3])).unwrap().unwrap();
        assert_eq!(m.b, Simplex::from([5]));
        assert_eq!(find_move(&t, &Simplex::from([1, 2])).unwrap(), None);
        let (t2, _) = apply_move(&t, &BistellarMove::new([1, 2, 3], [5])).unwrap();
        assert_eq!(
            find_move(&t2, &Simplex::from([1, 2])).unwrap(),
            Some(BistellarMove::new([1, 2], [4, 5]))
        );
        assert_eq!(
            find_move(&t, &Simplex::from([1, 9])),
            Err(Error::FaceNotPresent(Simplex::from([1, 9])))
        );
    }

    #[test]
    fn apply_examples() {
        let t = simplex_boundary(3).unwrap();
        let (t2, inv) = apply_move(&t, &BistellarMove::new([1, 2, 3], [5])).unwrap();
        assert_eq!(t2.f_vector().counts, vec![5, 9, 6]);
        let (t3, _) = apply_move(&t2, &BistellarMove::new([1, 2], [4, 5])).unwrap();
        assert_eq!(t3.f_vector().counts, vec![5, 9, 6]);
        assert_ne!(t3, t2);
        let (back, _) = apply_move(&t2, &inv).unwrap();
        assert_eq!(back, t);
        assert!(matches!(
            apply_move(&t, &BistellarMove::new([1, 2], [3, 4])),
            Err(Error::MoveNotAdmissible { .. })
        ));
    }

    #[test]
    fn f_delta_matches_counts() {
        let t = simplex_boundary(3).unwrap();
        let m = BistellarMove::new([1, 2, 3], [5]);
        assert_eq!(m.f_delta(), vec![1, 3, 2]);
        assert_eq!(m.inverse().f_delta(), vec![-1, -3, -2]);
        assert_eq!(BistellarMove::new([1, 2], [4, 5]).f_delta(), vec![0, 0, 0]);
        assert_eq!(BistellarMove::new([1, 2, 3], [4, 5]).f_delta(), vec![0, 1, 2, 1]);
        let (t2, _) = apply_move(&t, &m).unwrap();
        assert_eq!(t2.f_vector().counts, vec![5, 9, 6]);
    }

    #[test]
    fn z2_examples() {
        let octa = cross_polytope(3).unwrap();
        let (o2, inv) = apply_z2_move(&octa, &BistellarMove::new([1, 2, 3], [7])).unwrap();
        assert_eq!(o2.complex().f_vector().counts, vec![8, 18, 12]);
        assert!(Z2Complex::new(o2.complex().clone()).is_ok());
        let (back, _) = apply_z2_move(&o2, &inv).unwrap();
        assert_eq!(back.complex(), octa.complex());

        let sq = cross_polytope(2).unwrap();
        let (hex, _) = apply_z2_move(&sq, &BistellarMove::new([1, 2], [3])).unwrap();
        assert_eq!(hex.complex().f_vector().counts, vec![6, 6]);
        assert!(hex.complex().is_isomorphic(&k(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]])));
    }

    #[test]
    fn z2_move_errors() {
        let octa = cross_polytope(3).unwrap();
        // lk({1,2}) = {3},{-3}: the flip would create the edge {3,-3}
        assert!(matches!(
            apply_z2_move(&octa, &BistellarMove::new([1, 2], [-3, 3])),
            Err(Error::ActionNotFree(_))
        ));
        assert!(matches!(
            apply_z2_move(&octa, &BistellarMove::new([1, 2], [3, 4])),
            Err(Error::MoveNotAdmissible { .. })
        ));
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_moves(&simplex_boundary(3).unwrap()).len(), 4);
        assert_eq!(enumerate_moves(&simplex_boundary(2).unwrap()).len(), 3);
        let octa = cross_polytope(3).unwrap();
        let all = enumerate_moves(octa.complex());
        assert_eq!(all.iter().filter(|m| m.a.len() == 3).count(), 8);
        // every edge {x,y} has link {z},{-z}; B = {z,-z} is never an edge
        assert_eq!(all.iter().filter(|m| m.a.len() == 2).count(), 12);
        let z2 = enumerate_z2_moves(&octa);
        assert_eq!(z2.len(), 4);
        assert!(z2.iter().all(|m| m.a.len() == 3));
    }

    #[test]
    fn z2_filter_agrees_with_full_application() {
        for seed in 0..6 {
            let (walked, _) = random_z2_walk(&cross_polytope(3 + seed as usize % 2).unwrap(), 12, seed).unwrap();
            let fast: Vec<BistellarMove> = enumerate_z2_moves(&walked);
            let slow: Vec<BistellarMove> = enumerate_moves(walked.complex())
                .into_iter()
                .filter(|m| m.a > antipode(&m.a))
                .filter(|m| apply_z2_move(&walked, m).is_ok())
                .collect();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn enumeration_is_sorted() {
        let (walked, _) = random_z2_walk(&cross_polytope(3).unwrap(), 8, 3).unwrap();
        let moves = enumerate_moves(walked.complex());
        let mut sorted = moves.clone();
        sorted.sort_by(|x, y| x.a.len().cmp(&y.a.len()).then_with(|| x.a.cmp(&y.a)));
        assert_eq!(moves, sorted);
    }

    #[test]
    fn walks() {
        let octa = cross_polytope(3).unwrap();
        let (same, seq) = random_z2_walk(&octa, 0, 1).unwrap();
        assert_eq!(same, octa);
        assert!(seq.is_empty());
        let (w1, s1) = random_z2_walk(&octa, 10, 1).unwrap();
        let (w2, s2) = random_z2_walk(&octa, 10, 1).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(s1, s2);
        assert_eq!(w1.complex().euler_characteristic(), 2);
        assert!(Z2Complex::new(w1.complex().clone()).is_ok());
        assert_eq!(&s1.replay(octa.complex()).unwrap(), w1.complex());
        let back = s1.inverted().replay(w1.complex()).unwrap();
        assert_eq!(&back, octa.complex());
    }
}
