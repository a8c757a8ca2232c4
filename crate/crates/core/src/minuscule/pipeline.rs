use std::sync::Arc;

use super::{
    assemble_algebra, build_module_action, build_theta, minuscule_admissible,
    prolong_ladder_capped, respects_grading, Admissibility, IdealLadder, LadderModule,
    MinusculeError, ThetaMap, ThreeGrading, PROLONGATION_MONOMIAL_CAP,
};
use crate::repcore::{JacobiCertificate, JacobiMode, LieAlgebra, Representation};

/// Algebras up to this dimension get an exhaustive Jacobi check.
pub const JACOBI_FULL_CAP: usize = 150;
/// Number of sampled triples above the cap.
pub const JACOBI_SAMPLES: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct MinusculeOutput {
    pub algebra: Arc<LieAlgebra>,
    pub grading: ThreeGrading,
    pub admissibility: Admissibility,
    pub theta: ThetaMap,
    pub jacobi: JacobiCertificate,
    pub simple: bool,
    pub ladder: IdealLadder,
    pub module: LadderModule,
}

impl MinusculeOutput {
    pub fn fingerprint(&self) -> (usize, usize) {
        (self.algebra.dim(), self.module.rep.module_dim())
    }
}

pub fn jacobi_mode(dim: usize, seed: u64) -> JacobiMode {
    if dim <= JACOBI_FULL_CAP {
        JacobiMode::Full
    } else {
        JacobiMode::Sampled {
            triples: JACOBI_SAMPLES,
            seed,
        }
    }
}

/// Runs the whole construction on `(h, T)`.
pub fn run_minuscule(t: &Representation, label: &str) -> Result<MinusculeOutput, MinusculeError> {
    run_minuscule_capped(t, label, PROLONGATION_MONOMIAL_CAP)
}

/// [`run_minuscule`] with an explicit bound on prolongation size.
pub fn run_minuscule_capped(
    t: &Representation,
    label: &str,
    monomial_cap: usize,
) -> Result<MinusculeOutput, MinusculeError> {
    let admissibility = minuscule_admissible(t)?;
    if !admissibility.admissible {
        return Err(MinusculeError::Inadmissible);
    }
    let theta = build_theta(t, &admissibility)?;
    let (algebra, grading) = assemble_algebra(t, &theta, label);
    debug_assert!(respects_grading(&algebra, &grading));
    let jacobi = algebra.verify_jacobi(jacobi_mode(algebra.dim(), 0x5eed));
    if !jacobi.passed() {
        return Err(MinusculeError::JacobiFailure(jacobi));
    }
    let simple = algebra.is_simple_by_closure(8, 7);
    let algebra = Arc::new(algebra);
    let ladder = prolong_ladder_capped(t, monomial_cap)?;
    let module = build_module_action(
        algebra.clone(),
        &grading,
        t,
        &theta,
        &ladder,
        &format!("V({label})"),
    )?;
    Ok(MinusculeOutput {
        algebra,
        grading,
        admissibility,
        theta,
        jacobi,
        simple,
        ladder,
        module,
    })
}
