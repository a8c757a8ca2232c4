//! Lie algebras, representations, Casimir operators and the two
//! admissibility primitives.

mod algebra;
mod casimir;
mod classical;
mod representation;

pub use algebra::{IdealBlock, JacobiCertificate, JacobiMode, LieAlgebra};
pub use casimir::{
    block_casimirs, block_forms, casimir_matrix, casimir_on, dual_basis, report,
    solve_block_weights, two_eigenvalues, weighted_form, CasimirReport,
};
pub use classical::{matrix_algebra, sl_standard, sp_standard};
pub use representation::{
    cartan_complement_ideal, cartan_component, evaluation_rescale, invariant_vectors, kron_vec,
    multinomial, symmetric_power_vector, tangent_line_span, wedge2, Representation,
};

use crate::exactlin::ExactLinError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("representation has no extreme vector")]
    MissingExtreme,
    #[error("extreme vector is not a basis vector, so its dual covector is not canonical")]
    ExtremeNotBasisVector,
    #[error("invariant form is degenerate on the semisimple part")]
    DegenerateForm,
    #[error(transparent)]
    Linear(#[from] ExactLinError),
}
