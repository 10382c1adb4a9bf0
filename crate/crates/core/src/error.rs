use thiserror::Error;

use crate::complex::{Simplex, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a complex needs at least one facet")]
    EmptyComplex,
    #[error("vertex id 0 is reserved")]
    InvalidVertexId,
    #[error("face {0} is not in the complex")]
    FaceNotPresent(Simplex),
    #[error("vertex {0} is already used")]
    VertexCollision(Vertex),
    #[error("antipodal face of {0} is missing")]
    NotEquivariant(Simplex),
    #[error("face {0} contains an antipodal pair of vertices")]
    ActionNotFree(Simplex),
    #[error("vertex {0} has no antipodal partner")]
    UnpairedVertex(Vertex),
    #[error("quotients are only taken after an equivariant barycentric subdivision")]
    QuotientRequiresSubdivision,
    #[error("the quotient of {0} is not simplicial")]
    QuotientNotSimplicial(Simplex),
    #[error("move ({a}, {b}) is not admissible")]
    MoveNotAdmissible { a: Simplex, b: Simplex },
    #[error("move ({a}, {b}) blocks its antipodal partner")]
    InterferingAntipodalMove { a: Simplex, b: Simplex },
    #[error("no admissible move exists")]
    NoAdmissibleMove,
    #[error("vertex {0} has no label")]
    IncompleteLabelling(Vertex),
    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),
    #[error("no complementary edge found; the input is not a centrally symmetric sphere or the labels are out of range")]
    NoWitness,
    #[error("complex is not a closed pseudomanifold: {0}")]
    NotClosedPseudomanifold(String),
    #[error("flip sequence is corrupt at step {step}")]
    CorruptSequence { step: usize },
    #[error("reduction was inconclusive; direct count gives alpha+ = {alpha_plus}")]
    CertificateUnavailable { alpha_plus: usize },
    #[error("alpha+ parity changed at step {step}")]
    ParityViolation { step: usize },
    #[error("dimension parameter must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("no Fan labelling found after {0} attempts")]
    GenerationFailed(usize),
}
