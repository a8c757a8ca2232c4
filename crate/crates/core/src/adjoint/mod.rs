//! The adjoint construction: from a symplectic `h`-module `T₁` build the
//! five-graded `g = C ⊕ T₁* ⊕ (h ⊕ C) ⊕ T₁ ⊕ C`.

mod assemble;
mod frame;
mod pipeline;
mod quartic;
mod series;
mod special;

pub use assemble::{assemble_adjoint_algebra, respects_five_grading, FiveGrading};
pub use frame::{
    adjoint_admissible, extract_symplectic, solve_l, AdjointAdmissibility, AdjointFrame,
};
pub use pipeline::{finish_frame, run_adjoint, AdjointOutput};
pub use quartic::{
    base_locus_report, eval_poly, moment_quadrics, quartic_invariant, theta_flat_all,
    theta_quadrics, BaseLocusReport, Quartic,
};
pub use series::{
    evaluate_phi_adjoint, lowering_element, orbit_series, orbit_series_closed, phi_polynomial,
    VectorPolynomial,
};
pub use special::{
    gl_on_split, sl3_display, sl3_display_terms, special_case_a, special_case_c, Sl3Display,
};

use crate::exactlin::ExactLinError;
use crate::minuscule::MinusculeError;
use crate::repcore::{JacobiCertificate, RepError};

#[derive(Debug, thiserror::Error)]
pub enum AdjointError {
    #[error("second exterior power is not almost C-irreducible")]
    Inadmissible,
    #[error("Casimir test says admissible={casimir} but the tangent span has codimension {tangent_codim}")]
    AdmissibilityDisagreement { casimir: bool, tangent_codim: usize },
    #[error("expected one invariant two-form, found {0}")]
    NoInvariantLine(usize),
    #[error("the invariant two-form is degenerate")]
    DegenerateSymplectic,
    #[error("theta is not symmetric under the symplectic identification")]
    ThetaNotSymmetric,
    #[error("no constant l satisfies the Jacobi identity")]
    LInconsistent,
    #[error("the solved l fails the Jacobi identity on some triple")]
    LVerificationFailed,
    #[error("Jacobi identity fails on {:?}", .0.violation)]
    JacobiFailure(JacobiCertificate),
    #[error("the two formulas for the quartic disagree beyond a scalar")]
    QuarticMismatch,
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("the map is not defined at this point")]
    Indeterminate,
    #[error("the output is not sl3 with a two-dimensional T1")]
    NotSl3,
    #[error(transparent)]
    Minuscule(#[from] MinusculeError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linear(#[from] ExactLinError),
}
