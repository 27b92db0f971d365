//! Exact-arithmetic quadratic lattices and the embedding criteria used to
//! decide when a K3 transcendental lattice admits a Nikulin-style degree-two
//! quotient landing in (a twist of) the Kummer sandwich `U(2)^3 <= Lambda_0`.
//!
//! Everything is computed over `BigInt` / `BigRational`; there is no floating
//! point anywhere in this crate. Decisions that answer "yes" always carry a
//! certificate (an embedding matrix, an isotropic vector, or a similarity
//! scale) that can be re-validated without trusting the deciding code path.
//!
//! Module map:
//! - [`mat`]: dense exact matrices, Hermite and Smith normal forms.
//! - [`lattice`]: lattices as Gram matrices, named constructions,
//!   discriminant groups.
//! - [`embedding`]: sublattices-with-coordinates, primitivity, saturation,
//!   complements, scaled-dual intersections.
//! - [`forms`]: rational quadratic form invariants, Hilbert symbols,
//!   isotropy, Witt index, hyperbolic embeddings, similarity scales.
//! - [`criteria`]: the lattice-theoretic decision procedures (degree-two
//!   quotients, Kummer / product-Kummer dominance, primitive-embedding
//!   search, isogeny scale, the double-quotient obstruction).
//! - [`witness`]: the two fixed reference constructions in `Lambda_0`, with
//!   machine verification of every claimed property.
//! - [`corpus`]: deterministic seeded random generators used by tests and
//!   benchmarks.
//! - [`io`]: the JSON lattice/embedding file formats shared with the CLI.

#![forbid(unsafe_code)]

pub mod corpus;
pub mod criteria;
pub mod embedding;
pub mod error;
pub mod forms;
pub mod io;
pub mod lattice;
pub mod mat;
pub mod num_util;
pub mod witness;

pub use criteria::{Certificate, Decision, SearchBudget, Verdict};
pub use embedding::SublatticeEmbedding;
pub use error::LatticeError;
pub use forms::{FormInvariants, Place, ScaleCertificate};
pub use lattice::{FiniteQuadraticModule, Lattice, NamedLattice};
pub use mat::{QMat, SmithDecomposition, ZMat};

/// Exact integer type used throughout.
pub type Int = num::BigInt;
/// Exact rational type used throughout.
pub type Rat = num::BigRational;
