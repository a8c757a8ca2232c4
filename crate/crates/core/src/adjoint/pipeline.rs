use std::sync::Arc;

use super::{
    adjoint_admissible, assemble_adjoint_algebra, extract_symplectic, quartic_invariant,
    respects_five_grading, solve_l, AdjointAdmissibility, AdjointError, AdjointFrame, FiveGrading,
    Quartic,
};
use crate::minuscule::jacobi_mode;
use crate::repcore::{JacobiCertificate, LieAlgebra, Representation};

#[derive(Clone, Debug)]
pub struct AdjointOutput {
    pub algebra: Arc<LieAlgebra>,
    pub grading: FiveGrading,
    pub frame: AdjointFrame,
    /// `None` for the special cases that bypass the test.
    pub admissibility: Option<AdjointAdmissibility>,
    pub quartic: Quartic,
    pub jacobi: JacobiCertificate,
    pub simple: bool,
}

impl AdjointOutput {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn l(&self) -> &crate::exactlin::Rational {
        &self.frame.coefficients[0]
    }
}

/// Assembles and checks the algebra for a frame whose coefficients are
/// still unsolved.
pub fn finish_frame(
    mut frame: AdjointFrame,
    admissibility: Option<AdjointAdmissibility>,
    label: &str,
) -> Result<AdjointOutput, AdjointError> {
    if !frame.theta_symmetric() {
        return Err(AdjointError::ThetaNotSymmetric);
    }
    solve_l(&mut frame)?;
    let (algebra, grading) = assemble_adjoint_algebra(&frame, label);
    debug_assert!(respects_five_grading(&algebra, &grading));
    let jacobi = algebra.verify_jacobi(jacobi_mode(algebra.dim(), 0xad7));
    if !jacobi.passed() {
        return Err(AdjointError::JacobiFailure(jacobi));
    }
    let simple = algebra.is_simple_by_closure(8, 11);
    let quartic = quartic_invariant(&frame)?;
    Ok(AdjointOutput {
        algebra: Arc::new(algebra),
        grading,
        frame,
        admissibility,
        quartic,
        jacobi,
        simple,
    })
}

/// The adjoint algorithm on `(h, T₁)`.
pub fn run_adjoint(t: &Representation, label: &str) -> Result<AdjointOutput, AdjointError> {
    let adm = adjoint_admissible(t)?;
    if !adm.admissible {
        return Err(AdjointError::Inadmissible);
    }
    let (omega, omega_star) = extract_symplectic(t)?;
    let frame = AdjointFrame::new(t, omega, omega_star)?;
    finish_frame(frame, Some(adm), label)
}
