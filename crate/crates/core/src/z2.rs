//! Simplicial complexes with a free Z2-action given by vertex negation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::{faces_by_nonincreasing_dim, FaceMap, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// `-A`: negate every vertex id.
pub fn antipode(a: &Simplex) -> Simplex {
    Simplex::new(a.vertices().iter().map(|v| -v))
}

/// True if `a` contains some vertex together with its antipode.
pub fn has_antipodal_pair(a: &Simplex) -> bool {
    a.vertices().iter().any(|&v| v > 0 && a.contains(-v))
}

/// A simplicial complex closed under `v -> -v` on which the action is free.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z2Complex {
    complex: SimplicialComplex,
    // Set by `equivariant_sd`; the quotient is simplicial only then.
    subdivided: bool,
}

impl Z2Complex {
    /// Validates freeness and equivariance.
    pub fn new(complex: SimplicialComplex) -> Result<Self> {
        for f in complex.facets() {
            if has_antipodal_pair(f) {
                return Err(Error::ActionNotFree(f.clone()));
            }
        }
        for f in complex.facets() {
            if !complex.facets().contains(&antipode(f)) {
                return Err(Error::NotEquivariant(f.clone()));
            }
        }
        let vertices = complex.vertices();
        if let Some(&v) = vertices.iter().find(|v| !vertices.contains(&-**v)) {
            return Err(Error::UnpairedVertex(v));
        }
        Ok(Z2Complex { complex, subdivided: false })
    }

    /// Skips validation; the caller maintains both invariants.
    pub(crate) fn trusted(complex: SimplicialComplex) -> Self {
        Z2Complex { complex, subdivided: false }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }

    pub fn is_subdivided(&self) -> bool {
        self.subdivided
    }

    /// Barycentric subdivision with barycenters allocated in `±` pairs.
    ///
    /// Faces are visited by non-increasing dimension and lexicographically
    /// within a dimension; a face not yet numbered gets the next positive id
    /// and its antipode the negated id, so antipodal faces are subdivided
    /// consecutively and the involution extends to the subdivision.
    pub fn equivariant_sd(&self) -> (Z2Complex, FaceMap) {
        let offset = self.complex.max_abs_vertex();
        let mut ids: HashMap<Simplex, Vertex> = HashMap::new();
        let mut face_map = FaceMap::new();
        let mut next = offset;
        for face in faces_by_nonincreasing_dim(&self.complex) {
            if ids.contains_key(&face) {
                continue;
            }
            next += 1;
            let anti = antipode(&face);
            face_map.insert(next, face.clone());
            face_map.insert(-next, anti.clone());
            ids.insert(face, next);
            ids.insert(anti, -next);
        }
        let sd = self.complex.subdivide_with_ids(&ids);
        (Z2Complex { complex: sd, subdivided: true }, face_map)
    }

    /// `sd(M)/Z2`, with each antipodal pair represented by its positive id.
    /// Returns the quotient and the projection `v -> |v|`.
    pub fn quotient(&self) -> Result<(SimplicialComplex, BTreeMap<Vertex, Vertex>)> {
        if !self.subdivided {
            return Err(Error::QuotientRequiresSubdivision);
        }
        let mut facets = BTreeSet::new();
        for f in self.complex.facets() {
            let image = Simplex::new(f.vertices().iter().map(|v| v.abs()));
            if image.len() != f.len() {
                return Err(Error::QuotientNotSimplicial(f.clone()));
            }
            facets.insert(image);
        }
        let quotient = SimplicialComplex::from_facets(facets)?;
        if quotient.num_facets() * 2 != self.complex.num_facets() {
            return Err(Error::QuotientNotSimplicial(Simplex::empty()));
        }
        let projection = self.complex.vertices().into_iter().map(|v| (v, v.abs())).collect();
        Ok((quotient, projection))
    }

    /// Z2-isomorphism: a simplicial isomorphism commuting with negation.
    pub fn z2_isomorphism(&self, other: &Z2Complex) -> Option<BTreeMap<Vertex, Vertex>> {
        crate::complex::iso::find(&self.complex, &other.complex, true)
    }

    pub fn is_z2_isomorphic(&self, other: &Z2Complex) -> bool {
        self.z2_isomorphism(other).is_some()
    }
}
