//! Abstract simplicial complexes stored by their facets.
//!
//! Faces are never materialised up front: a face is any subset of a facet,
//! and operations that need the full face poset enumerate it on demand.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex ids are nonzero; `-v` is reserved as the antipode of `v` in
/// [`Z2Complex`](crate::z2::Z2Complex).
pub type Vertex = i32;

/// Barycentric subdivision bookkeeping: new vertex id -> original face.
pub type FaceMap = BTreeMap<Vertex, Simplex>;

/// A finite vertex set, kept strictly increasing.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|A| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn without(&self, v: Vertex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: Vertex) -> Simplex {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Simplex(out)
    }

    /// All nonempty subsets, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate faces");
        (1u32..(1u32 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    /// The codimension-one faces, i.e. the facets of the boundary complex.
    pub fn boundary_facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().map(move |&v| self.without(v))
    }
}

impl From<Vec<Vertex>> for Simplex {
    fn from(v: Vec<Vertex>) -> Self {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl<const N: usize> From<[Vertex; N]> for Simplex {
    fn from(v: [Vertex; N]) -> Self {
        Simplex::new(v)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Face counts `f_0, ..., f_d` of a complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    pub fn dimension(&self) -> isize {
        self.counts.len() as isize - 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite abstract simplicial complex, stored as its antichain of facets.
///
/// The facet set `{∅}` is the complex containing only the empty face (the
/// link of a facet); it has dimension -1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Simplex>", into = "Vec<Simplex>")]
pub struct SimplicialComplex {
    facets: BTreeSet<Simplex>,
}

impl TryFrom<Vec<Simplex>> for SimplicialComplex {
    type Error = Error;

    fn try_from(facets: Vec<Simplex>) -> Result<Self> {
        SimplicialComplex::from_facets(facets)
    }
}

impl From<SimplicialComplex> for Vec<Simplex> {
    fn from(k: SimplicialComplex) -> Self {
        k.facets.into_iter().collect()
    }
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`, dropping members that are
    /// contained in another member.
    pub fn from_facets<I, S>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Simplex>,
    {
        let set: BTreeSet<Simplex> = facets.into_iter().map(Into::into).collect();
        if set.is_empty() {
            return Err(Error::EmptyComplex);
        }
        if set.iter().any(|s| s.contains(0)) {
            return Err(Error::InvalidVertexId);
        }
        Ok(Self::from_antichain(prune(set)))
    }

    /// Caller guarantees `facets` is already an antichain.
    pub(crate) fn from_antichain(facets: BTreeSet<Simplex>) -> Self {
        SimplicialComplex { facets }
    }

    /// The complex `∂A`: all proper faces of `A`. For a single vertex this
    /// is `{∅}`.
    pub fn simplex_boundary_of(a: &Simplex) -> Self {
        if a.len() <= 1 {
            return Self::from_antichain(BTreeSet::from([Simplex::empty()]));
        }
        Self::from_antichain(a.boundary_facets().collect())
    }

    /// The full simplex `A` with all its faces.
    pub fn simplex(a: &Simplex) -> Self {
        Self::from_antichain(BTreeSet::from([a.clone()]))
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.facets.iter().any(|f| f.contains(v))
    }

    /// Membership respecting downward closure.
    pub fn contains_face(&self, a: &Simplex) -> bool {
        self.facets.iter().any(|f| a.is_subset(f))
    }

    /// Every nonempty face.
    pub fn faces(&self) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            out.extend(f.faces());
        }
        out
    }

    pub fn faces_of_dim(&self, d: usize) -> BTreeSet<Simplex> {
        self.faces().into_iter().filter(|f| f.len() == d + 1).collect()
    }

    /// The 1-skeleton as adjacency sets.
    pub fn adjacency(&self) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for f in &self.facets {
            for &u in f.vertices() {
                let entry = adj.entry(u).or_default();
                entry.extend(f.vertices().iter().copied().filter(|&w| w != u));
            }
        }
        adj
    }

    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let vs = f.vertices();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    out.insert((vs[i], vs[j]));
                }
            }
        }
        out
    }

    pub fn f_vector(&self) -> FVector {
        let mut seen: HashSet<Simplex> = HashSet::new();
        for f in &self.facets {
            seen.extend(f.faces());
        }
        let d = self.dim();
        let mut counts = vec![0u64; (d + 1).max(0) as usize];
        for s in &seen {
            counts[s.len() - 1] += 1;
        }
        FVector { counts }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Facets containing `a`.
    pub fn cofacets<'a>(&'a self, a: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.facets.iter().filter(move |f| a.is_subset(f))
    }

    /// `lk(A) = {B : A ∩ B = ∅, A ∪ B ∈ K}`.
    pub fn link(&self, a: &Simplex) -> Result<SimplicialComplex> {
        let facets: BTreeSet<Simplex> = self.cofacets(a).map(|f| f.difference(a)).collect();
        if facets.is_empty() {
            return Err(Error::FaceNotPresent(a.clone()));
        }
        Ok(Self::from_antichain(facets))
    }

    /// Closed star `st(A) = A ⋆ lk(A)`.
    pub fn star(&self, a: &Simplex) -> Result<SimplicialComplex> {
        let facets: BTreeSet<Simplex> = self.cofacets(a).cloned().collect();
        if facets.is_empty() {
            return Err(Error::FaceNotPresent(a.clone()));
        }
        Ok(Self::from_antichain(facets))
    }

    /// `K ⋆ L` for complexes on disjoint vertex sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mine = self.vertices();
        if let Some(&v) = other.vertices().iter().find(|v| mine.contains(v)) {
            return Err(Error::VertexCollision(v));
        }
        let mut facets = BTreeSet::new();
        for f in &self.facets {
            for g in &other.facets {
                facets.insert(f.union(g));
            }
        }
        Ok(Self::from_antichain(facets))
    }

    /// Stellar subdivision `(A, a)`: replace `st(A)` by `a ⋆ ∂A ⋆ lk(A)`.
    ///
    /// When `A` is a single vertex `∂A` is `{∅}`, so the operation renames
    /// that vertex to `a`.
    pub fn stellar_subdivide(&self, a: &Simplex, fresh: Vertex) -> Result<SimplicialComplex> {
        if fresh == 0 {
            return Err(Error::InvalidVertexId);
        }
        if self.has_vertex(fresh) {
            return Err(Error::VertexCollision(fresh));
        }
        if a.is_empty() || !self.contains_face(a) {
            return Err(Error::FaceNotPresent(a.clone()));
        }
        let mut facets = BTreeSet::new();
        for f in &self.facets {
            if a.is_subset(f) {
                for &v in a.vertices() {
                    facets.insert(f.without(v).with(fresh));
                }
            } else {
                facets.insert(f.clone());
            }
        }
        Ok(Self::from_antichain(facets))
    }

    /// Barycentric subdivision. Barycenters are numbered `m+1, m+2, ...`
    /// where `m` is the largest absolute vertex id, visiting faces by
    /// non-increasing dimension and lexicographically within a dimension.
    pub fn barycentric_subdivide(&self) -> (SimplicialComplex, FaceMap) {
        let offset = self.max_abs_vertex();
        let mut ids = HashMap::new();
        let mut face_map = FaceMap::new();
        for (i, face) in faces_by_nonincreasing_dim(self).into_iter().enumerate() {
            let id = offset + 1 + i as Vertex;
            face_map.insert(id, face.clone());
            ids.insert(face, id);
        }
        (self.subdivide_with_ids(&ids), face_map)
    }

    /// Builds `sd(K)` with the given barycenter ids: one facet per maximal
    /// chain of faces.
    pub(crate) fn subdivide_with_ids(&self, ids: &HashMap<Simplex, Vertex>) -> SimplicialComplex {
        let mut facets = BTreeSet::new();
        for f in &self.facets {
            let mut perm: Vec<Vertex> = f.vertices().to_vec();
            for_each_permutation(&mut perm, &mut |order| {
                let mut chain = Vec::with_capacity(order.len());
                for j in 1..=order.len() {
                    chain.push(ids[&Simplex::new(order[..j].iter().copied())]);
                }
                facets.insert(Simplex::new(chain));
            });
        }
        Self::from_antichain(facets)
    }

    pub(crate) fn max_abs_vertex(&self) -> Vertex {
        self.vertices().iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Face-preserving vertex bijection onto `other`, if one exists.
    ///
    /// Backtracking search pruned by vertex degree and link f-vectors; meant
    /// for small complexes.
    pub fn isomorphism(&self, other: &SimplicialComplex) -> Option<BTreeMap<Vertex, Vertex>> {
        crate::complex::iso::find(self, other, false)
    }

    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        self.isomorphism(other).is_some()
    }
}

fn prune(set: BTreeSet<Simplex>) -> BTreeSet<Simplex> {
    let mut by_size: Vec<&Simplex> = set.iter().collect();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<&Simplex> = Vec::new();
    for s in by_size {
        if !kept.iter().any(|k| k.len() > s.len() && s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept.into_iter().cloned().collect()
}

/// Faces sorted by non-increasing dimension, lexicographic within a
/// dimension. This is the order in which stellar subdivisions produce `sd`.
pub(crate) fn faces_by_nonincreasing_dim(k: &SimplicialComplex) -> Vec<Simplex> {
    let mut faces: Vec<Simplex> = k.faces().into_iter().collect();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces
}

fn for_each_permutation(items: &mut [Vertex], f: &mut impl FnMut(&[Vertex])) {
    fn rec(items: &mut [Vertex], k: usize, f: &mut impl FnMut(&[Vertex])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, f);
            items.swap(k, i);
        }
    }
    rec(items, 0, f);
}

pub(crate) mod iso {
    use super::*;

    struct Side<'a> {
        k: &'a SimplicialComplex,
        adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
        signature: BTreeMap<Vertex, (usize, FVector)>,
    }

    impl<'a> Side<'a> {
        fn new(k: &'a SimplicialComplex) -> Self {
            let mut signature = BTreeMap::new();
            for v in k.vertices() {
                let s = Simplex::new([v]);
                let link = k.link(&s).expect("vertex is a face");
                signature.insert(v, (k.cofacets(&s).count(), link.f_vector()));
            }
            Side { k, adj: k.adjacency(), signature }
        }

        fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
            self.adj.get(&u).is_some_and(|s| s.contains(&v))
        }
    }

    pub(crate) fn find(
        a: &SimplicialComplex,
        b: &SimplicialComplex,
        antipodal: bool,
    ) -> Option<BTreeMap<Vertex, Vertex>> {
        if a.num_facets() != b.num_facets() || a.f_vector() != b.f_vector() {
            return None;
        }
        let sa = Side::new(a);
        let sb = Side::new(b);
        let mut hist_a: Vec<_> = sa.signature.values().collect();
        let mut hist_b: Vec<_> = sb.signature.values().collect();
        hist_a.sort();
        hist_b.sort();
        if hist_a != hist_b {
            return None;
        }

        // Visit vertices so that each one has many already-placed neighbours.
        let mut order: Vec<Vertex> = Vec::new();
        let mut placed: BTreeSet<Vertex> = BTreeSet::new();
        let all: Vec<Vertex> = a.vertices().into_iter().collect();
        while order.len() < all.len() {
            let next = all
                .iter()
                .copied()
                .filter(|v| !placed.contains(v))
                .max_by_key(|v| {
                    let back = sa.adj[v].iter().filter(|u| placed.contains(u)).count();
                    (back, std::cmp::Reverse(*v))
                })
                .expect("unplaced vertex remains");
            for v in [next, -next] {
                if (v == next || antipodal) && !placed.contains(&v) {
                    placed.insert(v);
                    order.push(v);
                }
            }
        }

        let facets_b: HashSet<&Simplex> = b.facets().iter().collect();
        let mut map: HashMap<Vertex, Vertex> = HashMap::new();
        let mut used: HashSet<Vertex> = HashSet::new();
        let candidates: Vec<Vertex> = b.vertices().into_iter().collect();
        if search(&sa, &sb, &facets_b, &order, 0, &candidates, antipodal, &mut map, &mut used) {
            Some(map.into_iter().collect())
        } else {
            None
        }
    }

    fn consistent(
        sa: &Side,
        sb: &Side,
        facets_b: &HashSet<&Simplex>,
        v: Vertex,
        w: Vertex,
        map: &HashMap<Vertex, Vertex>,
    ) -> bool {
        if sa.signature[&v] != sb.signature[&w] {
            return false;
        }
        for (&u, &x) in map {
            if sa.adjacent(u, v) != sb.adjacent(x, w) {
                return false;
            }
        }
        let vs = Simplex::new([v]);
        for f in sa.k.cofacets(&vs) {
            if f.vertices().iter().all(|u| *u == v || map.contains_key(u)) {
                let image = Simplex::new(
                    f.vertices()
                        .iter()
                        .map(|u| if *u == v { w } else { map[u] }),
                );
                if !facets_b.contains(&image) {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        sa: &Side,
        sb: &Side,
        facets_b: &HashSet<&Simplex>,
        order: &[Vertex],
        pos: usize,
        candidates: &[Vertex],
        antipodal: bool,
        map: &mut HashMap<Vertex, Vertex>,
        used: &mut HashSet<Vertex>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        if map.contains_key(&v) {
            return search(sa, sb, facets_b, order, pos + 1, candidates, antipodal, map, used);
        }
        for &w in candidates {
            if used.contains(&w) {
                continue;
            }
            if antipodal && used.contains(&-w) {
                continue;
            }
            if !consistent(sa, sb, facets_b, v, w, map) {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            let mut paired = false;
            if antipodal {
                if !consistent(sa, sb, facets_b, -v, -w, map) {
                    map.remove(&v);
                    used.remove(&w);
                    continue;
                }
                map.insert(-v, -w);
                used.insert(-w);
                paired = true;
            }
            if search(sa, sb, facets_b, order, pos + 1, candidates, antipodal, map, used) {
                return true;
            }
            map.remove(&v);
            used.remove(&w);
            if paired {
                map.remove(&-v);
                used.remove(&-w);
            }
        }
        false
    }
}
