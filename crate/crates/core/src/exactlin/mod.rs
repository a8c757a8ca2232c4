//! Exact rational linear algebra and indexing of tensor power spaces.

mod index;
mod matrix;
mod power;
mod rational;
mod subspace;
mod vector;

pub use index::{binomial, multiset, TensorIndex};
pub use matrix::RationalMatrix;
pub use power::{
    fischer_weights, induced_power_matrix, sort_with_sign, symmetric_derivation_apply,
    symmetric_derivative, symmetric_multiply, tensor_action,
};
pub use rational::{ParseRationalError, Rational};
pub use subspace::{
    annihilator, inverse, kernel, kernel_of_rows, solve, span_closure, CoordinateSolver,
    EchelonBuilder, Subspace,
};
pub use vector::{Accumulator, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactLinError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
}
