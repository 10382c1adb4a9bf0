//! Fan labellings, alternating simplices and the relabelling that carries a
//! Fan labelling across a Z2-bistellar move.
//!
//! Labels are exact rationals. A move that would create a complementary edge
//! perturbs one label into the gap above it, and rationals keep that gap
//! condition exact no matter how many moves are chained.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::moves::{apply_z2_move, BistellarMove};
use crate::z2::{antipode, Z2Complex};

/// A vertex labelling by nonzero rationals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FanLabelling {
    labels: BTreeMap<Vertex, BigRational>,
}

impl FanLabelling {
    pub fn from_integers(labels: impl IntoIterator<Item = (Vertex, i64)>) -> Self {
        FanLabelling {
            labels: labels
                .into_iter()
                .map(|(v, l)| (v, BigRational::from_integer(BigInt::from(l))))
                .collect(),
        }
    }

    pub fn from_rationals(labels: impl IntoIterator<Item = (Vertex, BigRational)>) -> Self {
        FanLabelling { labels: labels.into_iter().collect() }
    }

    /// `λ(v) = label(v)` for positive `v` and `λ(-v) = -λ(v)`.
    pub fn antipodal(positive: impl IntoIterator<Item = (Vertex, i64)>) -> Self {
        Self::from_integers(positive.into_iter().flat_map(|(v, l)| [(v, l), (-v, -l)]))
    }

    /// Every vertex labelled by its own id.
    pub fn identity(k: &SimplicialComplex) -> Self {
        Self::from_integers(k.vertices().into_iter().map(|v| (v, v as i64)))
    }

    pub fn get(&self, v: Vertex) -> Option<&BigRational> {
        self.labels.get(&v)
    }

    pub fn set(&mut self, v: Vertex, label: BigRational) {
        self.labels.insert(v, label);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &BigRational)> {
        self.labels.iter().map(|(v, l)| (*v, l))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.labels.values().all(|l| l.is_integer())
    }

    /// Integer labels, if every label is an integer that fits in `i64`.
    pub fn to_integers(&self) -> Option<BTreeMap<Vertex, i64>> {
        use num_traits::ToPrimitive;
        self.labels
            .iter()
            .map(|(v, l)| {
                if l.is_integer() {
                    l.to_integer().to_i64().map(|x| (*v, x))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Largest absolute label value.
    pub fn max_abs(&self) -> BigRational {
        self.labels.values().map(|l| l.abs()).max().unwrap_or_else(BigRational::zero)
    }

    fn restricted_to(&self, vertices: &BTreeSet<Vertex>) -> FanLabelling {
        FanLabelling {
            labels: self
                .labels
                .iter()
                .filter(|(v, _)| vertices.contains(v))
                .map(|(v, l)| (*v, l.clone()))
                .collect(),
        }
    }
}

/// Classification of a simplex under a labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alternation {
    Positive,
    Negative,
    None,
}

impl Alternation {
    pub fn flipped(self) -> Self {
        match self {
            Alternation::Positive => Alternation::Negative,
            Alternation::Negative => Alternation::Positive,
            Alternation::None => Alternation::None,
        }
    }
}

/// Numbers of positive and negative alternating facets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaCounts {
    pub alpha_plus: usize,
    pub alpha_minus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroLabel { vertex: Vertex },
    Antipodality { vertex: Vertex },
    ComplementaryEdge { u: Vertex, v: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroLabel { vertex } => write!(f, "vertex {vertex} has label 0"),
            Violation::Antipodality { vertex } => {
                write!(f, "label of {} is not the negated label of {vertex}", -vertex)
            }
            Violation::ComplementaryEdge { u, v } => write!(f, "edge {{{u},{v}}} is complementary"),
        }
    }
}

/// Lists every vertex and edge violating the Fan hypotheses: `λ(-v) = -λ(v)`
/// and `λ(u) + λ(v) ≠ 0` on edges. An empty list means `λ` is a Fan labelling.
pub fn validate_fan(m: &Z2Complex, labels: &FanLabelling) -> Result<Vec<Violation>> {
    validate_on(m.complex(), labels, true)
}

fn validate_on(k: &SimplicialComplex, labels: &FanLabelling, antipodal: bool) -> Result<Vec<Violation>> {
    let vertices = k.vertices();
    for &v in &vertices {
        if labels.get(v).is_none() {
            return Err(Error::IncompleteLabelling(v));
        }
    }
    let mut out = Vec::new();
    for &v in &vertices {
        let l = &labels.labels[&v];
        if l.is_zero() {
            out.push(Violation::ZeroLabel { vertex: v });
        }
        if antipodal && v > 0 && vertices.contains(&-v) && labels.labels[&-v] != -l {
            out.push(Violation::Antipodality { vertex: v });
        }
    }
    for (u, v) in k.edges() {
        if (&labels.labels[&u] + &labels.labels[&v]).is_zero() {
            out.push(Violation::ComplementaryEdge { u, v });
        }
    }
    Ok(out)
}

fn require_fan(m: &Z2Complex, labels: &FanLabelling) -> Result<()> {
    let violations = validate_fan(m, labels)?;
    if let Some(v) = violations.first() {
        return Err(Error::InvalidLabelling(v.to_string()));
    }
    Ok(())
}

/// Sorts the labels of `a` by absolute value; `a` is alternating when the
/// absolute values are distinct and the signs alternate. Its sign is the
/// sign of the smallest label.
///
/// Panics if a vertex of `a` is unlabelled.
pub fn classify_simplex(a: &Simplex, labels: &FanLabelling) -> Alternation {
    let mut ls: Vec<&BigRational> = a
        .vertices()
        .iter()
        .map(|v| labels.get(*v).unwrap_or_else(|| panic!("vertex {v} is unlabelled")))
        .collect();
    if ls.is_empty() || ls.iter().any(|l| l.is_zero()) {
        return Alternation::None;
    }
    ls.sort_by_key(|l| l.abs());
    for w in ls.windows(2) {
        if w[0].abs() == w[1].abs() || w[0].is_positive() == w[1].is_positive() {
            return Alternation::None;
        }
    }
    if ls[0].is_positive() {
        Alternation::Positive
    } else {
        Alternation::Negative
    }
}

/// `(α⁺, α⁻)` over the facets of `k`.
pub fn alpha_counts(k: &SimplicialComplex, labels: &FanLabelling) -> AlphaCounts {
    let mut counts = AlphaCounts::default();
    for f in k.facets() {
        match classify_simplex(f, labels) {
            Alternation::Positive => counts.alpha_plus += 1,
            Alternation::Negative => counts.alpha_minus += 1,
            Alternation::None => {}
        }
    }
    counts
}

/// A complementary edge `{u, v}` with `λ(u) + λ(v) = 0`.
///
/// `labels` must be antipodal with values in `±1..=±n`, `n = dim M`. On a
/// centrally symmetric `n`-sphere such an edge always exists, so `NoWitness`
/// means the complex is not one.
pub fn tucker_witness(m: &Z2Complex, labels: &FanLabelling) -> Result<(Vertex, Vertex)> {
    let k = m.complex();
    let violations = validate_on(k, labels, true)?;
    if let Some(v) = violations.iter().find(|v| !matches!(v, Violation::ComplementaryEdge { .. })) {
        return Err(Error::InvalidLabelling(v.to_string()));
    }
    let bound = BigRational::from_integer(BigInt::from(k.dim().max(0)));
    if let Some((v, l)) = labels.iter().find(|(v, l)| k.has_vertex(*v) && l.abs() > bound) {
        return Err(Error::InvalidLabelling(format!("label {l} of vertex {v} exceeds {bound}")));
    }
    violations
        .into_iter()
        .find_map(|v| match v {
            Violation::ComplementaryEdge { u, v } => Some((u, v)),
            _ => None,
        })
        .ok_or(Error::NoWitness)
}

/// Which relabelling rule fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelabelRule {
    /// `B` is a fresh vertex; it takes the smallest positive label of `A`.
    NewVertex,
    /// `B` is a would-be complementary edge; its positive end moves up.
    Perturb,
    /// Labels carry over unchanged.
    Keep,
}

#[derive(Clone, Debug)]
pub struct Relabelled {
    pub complex: Z2Complex,
    pub labels: FanLabelling,
    pub inverse: BistellarMove,
    pub rule: RelabelRule,
}

/// Applies the Z2-move `m` to `M` and returns a Fan labelling of the result
/// whose `α⁺` has the same parity as that of `labels` on `M`.
///
/// Only the fresh or perturbed pair `{u, -u}` changes; vertices removed by
/// the move are dropped.
pub fn relabel_move(m_complex: &Z2Complex, labels: &FanLabelling, m: &BistellarMove) -> Result<Relabelled> {
    require_fan(m_complex, labels)?;
    let (next, inverse) = apply_z2_move(m_complex, m)?;
    let mut out = labels.restricted_to(&next.complex().vertices());
    let rule = if m.b.len() == 1 && !m_complex.complex().has_vertex(m.b.vertices()[0]) {
        // Work with whichever of A, -A carries a positive label.
        let (a, u) = if m.a.vertices().iter().any(|v| labels.labels[v].is_positive()) {
            (m.a.clone(), m.b.vertices()[0])
        } else {
            (antipode(&m.a), -m.b.vertices()[0])
        };
        let min_pos = a
            .vertices()
            .iter()
            .map(|v| &labels.labels[v])
            .filter(|l| l.is_positive())
            .min()
            .expect("A carries a positive label")
            .clone();
        out.set(-u, -min_pos.clone());
        out.set(u, min_pos);
        RelabelRule::NewVertex
    } else if m.b.len() == 2 {
        let (x, y) = (m.b.vertices()[0], m.b.vertices()[1]);
        if (&labels.labels[&x] + &labels.labels[&y]).is_zero() {
            let u = if labels.labels[&x].is_positive() { x } else { y };
            let current = labels.labels[&u].clone();
            let bumped = gap_midpoint(labels, &current);
            out.set(-u, -bumped.clone());
            out.set(u, bumped);
            RelabelRule::Perturb
        } else {
            RelabelRule::Keep
        }
    } else {
        RelabelRule::Keep
    };
    Ok(Relabelled { complex: next, labels: out, inverse, rule })
}

/// Midpoint between `value > 0` and the next larger absolute label, or
/// `value + 1/2` when there is none. No label has absolute value in
/// `(value, result]`.
fn gap_midpoint(labels: &FanLabelling, value: &BigRational) -> BigRational {
    let next = labels
        .labels
        .values()
        .map(|l| l.abs())
        .filter(|l| l > value)
        .min();
    let two = BigRational::from_integer(BigInt::from(2));
    match next {
        Some(n) => (value + n) / two,
        None => value + BigRational::one() / two,
    }
}

/// Order-preserving remap of the distinct absolute values onto `1..=m`,
/// keeping signs.
pub fn integerize(labels: &FanLabelling) -> FanLabelling {
    let distinct: BTreeSet<BigRational> = labels.labels.values().map(|l| l.abs()).collect();
    let rank: BTreeMap<&BigRational, i64> =
        distinct.iter().enumerate().map(|(i, l)| (l, i as i64 + 1)).collect();
    FanLabelling::from_integers(labels.labels.iter().map(|(v, l)| {
        let r = rank[&l.abs()];
        (*v, if l.is_negative() { -r } else { r })
    }))
}
