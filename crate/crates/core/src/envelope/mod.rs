//! Presentations of weight graded algebras and ns operads, their quotients,
//! the min- and max-envelope operads, quadratic duals and the Raney
//! correspondence between leftmost-leaf trees and tensors.

mod algebra;
mod construct;
mod dual;
mod operad;
mod presentation;
pub mod raney;

use thiserror::Error;

pub use algebra::{AlgebraQuotient, MultiplicationTable};
pub use construct::{leftmost_leaf_trees, u_max, u_max_basis, u_max_quadratic, u_min, u_min_quadratic, Envelope};
pub use dual::{quadratic_dual_algebra, quadratic_dual_operad_dims, DualAlgebra, DualOperadDims};
pub use operad::OperadQuotient;
pub use presentation::{AlgebraPresentation, OperadPresentation};
pub use raney::{raney_shift, raney_tensor, tree_from_tensor, RaneySequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("generator `{0}` has weight 0; connected algebras need positive weights")]
    WeightZeroGenerator(String),
    #[error("generator `{name}` has arity {arity}; reduced connected operads need arity at least 2")]
    LowArityGenerator { name: String, arity: usize },
    #[error("relation {index} is inhomogeneous: found {kind} {first} and {second}")]
    Inhomogeneous {
        index: usize,
        kind: &'static str,
        first: usize,
        second: usize,
    },
    #[error("relation {0} uses an unknown generator")]
    UnknownGenerator(usize),
    #[error("presentation is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("bound too small: {what} needs {needed}, computed up to {available}")]
    BoundTooSmall {
        what: &'static str,
        needed: usize,
        available: usize,
    },
    #[error("invalid Raney sequence: {0}")]
    Raney(String),
    #[error("tree is not in leftmost-leaf form")]
    NotLeftmostLeaf,
}
