//! Combinatorial topology toolkit built around bistellar moves.
//!
//! The crate models finite abstract simplicial complexes by their facets,
//! free simplicial Z2-actions (the antipode of a vertex `v` is `-v`),
//! bistellar and Z2-bistellar moves, Fan labellings, and a heuristic flip
//! reduction engine. Together they turn the parity argument behind Fan's
//! lemma into a replayable certificate: reduce a centrally symmetric sphere
//! to the cross polytope, carry a Fan labelling along every move, and check
//! that the number of positive alternating facets never changes parity.
//!
//! ```
//! use fanflip::{fan, generators};
//!
//! let octahedron = generators::cross_polytope(3).unwrap();
//! let labels = generators::canonical_cross_labelling(3).unwrap();
//! let counts = fan::alpha_counts(octahedron.complex(), &labels);
//! assert_eq!((counts.alpha_plus, counts.alpha_minus), (1, 1));
//! ```

pub mod cli;
pub mod complex;
pub mod error;
pub mod fan;
pub mod generators;
pub mod moves;
pub mod recognition;
pub mod z2;

pub use complex::{FVector, FaceMap, Simplex, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use fan::{AlphaCounts, Alternation, FanLabelling};
pub use moves::{BistellarMove, FlipSequence};
pub use recognition::{ReductionConfig, ReductionReport};
pub use z2::Z2Complex;
