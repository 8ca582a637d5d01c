//! Invariants and certified constructions for amplified graph C*-algebras and
//! the AF cores of Cuntz–Krieger algebras.
//!
//! The crate is organised by capability:
//!
//! - [`graph`]: multigraphs, acyclic relations, closure/reduction and the two
//!   graph constructions `E_R` (add a loop at every vertex) and `F_R`
//!   (amplify every arrow).
//! - [`dimension`]: dimension groups with the cone given as a predicate on
//!   minimal support, plus the walk-counting certificate for the core of
//!   `C*(E_R)`.
//! - [`coxeter`]: Weyl groups from Cartan data, minimal coset representatives
//!   and the flag-manifold relation.
//! - [`moves`]: row additions on `B_E = A_Eᵀ − I`.
//! - [`operator`]: truncated Toeplitz and path-space representations used to
//!   check explicit *-homomorphism formulas exactly.
//! - [`projective`]: `K⁰(ℂPⁿ⁻¹) = ℤ[x]/(xⁿ)` and its line-bundle cone.
//! - [`cli`]: the `afcore` command-line front end.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`
//! directory.

pub mod cli;
pub mod coxeter;
pub mod dimension;
pub mod graph;
pub mod matrix;
pub mod moves;
pub mod operator;
pub mod projective;

pub use graph::{DagRelation, GraphError, MultiGraph, Multiplicity};
pub use matrix::IntMatrix;
