//! Exact Boij-Söderberg decompositions of Betti diagrams of graded complete
//! intersections.
//!
//! The crate works purely on degree data: a complete intersection is given by
//! its generator degrees, its Betti diagram is computed from Koszul
//! subset-sum counts, and diagrams are decomposed into normalized pure
//! diagrams either greedily ([`greedy`]) or recursively from the
//! decomposition of a smaller complete intersection ([`recursive`]).
//! Closed forms in codimension three and four live in [`codim4`].
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod cli;
pub mod codim4;
pub mod diagram;
pub mod error;
pub mod greedy;
pub mod koszul;
pub mod rational;
pub mod recursive;
pub mod sequence;

pub use diagram::{Diagram, Pos};
pub use error::{Error, Result};
pub use greedy::{decompose, recompose, Decomposition, EliminationRecord, Term};
pub use koszul::{betti_ci, DegreeTuple};
pub use rational::Rational;
pub use recursive::{new_algorithm, RecursiveReport};
pub use sequence::{pure_diagram, DegreeSequence};
