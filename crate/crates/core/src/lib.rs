//! Combinatorics of nonpositively curved cube complexes.
//!
//! The crate covers cube complexes and their links, hyperplanes and the
//! pathologies that obstruct specialness, integral first homology,
//! hyperplane surgery (collapse, split, hierarchies), the hyperplane
//! genus, Salvetti complexes of right-angled Artin groups, untwisted
//! blow-ups along compatible Whitehead partitions, and automorphism
//! searches.
//!
//! Homology is generic over an exact integer scalar; the aliases below
//! fix arbitrary-precision integers, which every other module uses.

pub mod autos;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod genus;
pub mod graph;
pub mod homology;
pub mod hyperplane;
pub mod raag;
pub mod surgery;
pub mod whitehead;

pub use complex::{CubeComplex, CubeIdx, Sign, SignedCoord, SignedPermMap};
pub use error::{Error, Result};
pub use graph::SimplicialGraph;

/// Default exact scalar.
pub type Integer = num_bigint::BigInt;
/// Integer matrix over the default scalar.
pub type IntMatrix = homology::Matrix<Integer>;
/// Smith normal form over the default scalar.
pub type IntSnf = homology::SmithNormalForm<Integer>;
/// First homology over the default scalar.
pub type H1 = homology::H1Summary<Integer>;
/// Machine-word matrix, for callers that know their entries stay small.
pub type SmallIntMatrix = homology::Matrix<i64>;
