//! Truncated operator representations and exact relation checking.
//!
//! Operators are sparse matrices over `ℚ` on a finite index space, each
//! tagged with a gauge degree (the power of `z` in a `C(S¹)` factor). Two
//! models are provided: tensor powers of the truncated unilateral shift
//! ([`toeplitz`]) and the finite path space of a graph ([`path_space`]).
//! Relations between named operators ([`expr`]) are evaluated exactly on the
//! interior of the space, away from the truncation boundary, where
//! truncation artifacts cannot reach ([`check`]). [`images`] builds the
//! concrete families: the Plücker generators, the Grassmannian core, the
//! lens-space map and the rank-one partial isometries.

pub mod check;
pub mod expr;
pub mod graded;
pub mod images;
pub mod path_space;
pub mod rep;
pub mod space;
pub mod sparse;
pub mod toeplitz;

use thiserror::Error;

use crate::graph::GraphError;

/// Exact scalars. All entries that occur are real.
pub type Q = num_rational::Rational64;

pub use check::{check_ck_family, check_relations, CkFamily, RelationResult};
pub use expr::{sym, Expr, Relation};
pub use graded::{GradedOperator, GradedVector};
pub use images::{
    grassmann_core_images, lens_iso_images, plucker_rep, rank_one_check, x6_generator_images,
};
pub use path_space::PathSpace;
pub use rep::Representation;
pub use space::{IndexSpace, InteriorSpec};
pub use sparse::SparseMatrix;
pub use toeplitz::ToeplitzFactors;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("symbol `{0}` is not bound")]
    UnboundSymbol(String),
    #[error("degree mismatch in `{context}`: {left} vs {right}")]
    DegreeMismatch {
        context: String,
        left: i64,
        right: i64,
    },
    #[error("operator `{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("truncation {n} is too small, need at least {required}")]
    TruncationTooSmall { n: usize, required: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("family does not match the graph: {0}")]
    FamilyMismatch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
