//! The minuscule construction: from `(h, T)` build `g = T* ⊕ (h ⊕ C) ⊕ T`
//! together with the ladder `V = ⊕ V_j` and its `g`-module structure.

mod assemble;
mod ladder;
mod module;
mod phi;
mod pipeline;
mod theta;

pub use assemble::{assemble_algebra, respects_grading, ThreeGrading};
pub use ladder::{
    monomial_derivatives, prolong, prolong_ladder, prolong_ladder_capped, IdealLadder,
    PROLONGATION_GUARD, PROLONGATION_MONOMIAL_CAP,
};
pub use module::{build_module_action, LadderModule, LadderProjections};
pub use phi::evaluate_phi;
pub use pipeline::{
    jacobi_mode, run_minuscule, run_minuscule_capped, MinusculeOutput, JACOBI_FULL_CAP,
    JACOBI_SAMPLES,
};
pub use theta::{
    build_theta, full_casimir, minuscule_admissible, theta_operator, theta_tensor, Admissibility,
    ThetaMap, TANGENT_CHECK_CAP,
};

use crate::exactlin::ExactLinError;
use crate::repcore::RepError;

#[derive(Debug, thiserror::Error)]
pub enum MinusculeError {
    #[error("no invariant form makes the Casimir on the second exterior power a homothety")]
    Inadmissible,
    #[error("Casimir test says admissible={casimir} but the tangent span has dimension {tangent_dim} of {wedge_dim}")]
    AdmissibilityDisagreement {
        casimir: bool,
        tangent_dim: usize,
        wedge_dim: usize,
    },
    #[error("input is not irreducible: {0}")]
    NotIrreducible(&'static str),
    #[error("theta vanishes identically")]
    ZeroTheta,
    #[error("no single scale of theta satisfies the Jacobi identity")]
    ScaleInconsistent,
    #[error("prolongation did not terminate by degree {0}")]
    ProlongationRunaway(usize),
    #[error("prolongation to degree {degree} needs {monomials} monomials, over the cap")]
    ProlongationTooLarge { degree: usize, monomials: usize },
    #[error("ladder piece {0} is not stable under the expected operators")]
    LadderNotInvariant(usize),
    #[error("Fischer form is degenerate on ladder piece {0}")]
    DegenerateFischer(usize),
    #[error("no raising constants make the module action a homomorphism")]
    RaisingInconsistent,
    #[error("raising constants are not determined")]
    RaisingUnderdetermined,
    #[error("raising constants change sign")]
    MixedRaisingSigns,
    #[error("module action fails on the bracket of basis elements {0} and {1}")]
    ModuleNotHomomorphism(usize, usize),
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("the map is not defined at this point")]
    Indeterminate,
    #[error("Jacobi identity fails on {:?}", .0.violation)]
    JacobiFailure(crate::repcore::JacobiCertificate),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linear(#[from] ExactLinError),
}
