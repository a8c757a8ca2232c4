use super::{LadderModule, MinusculeError};
use crate::exactlin::{Rational, SparseVec};
use crate::repcore::symmetric_power_vector;

/// The map `[x0 : y] ↦ [Σ_k x0^{d-k} ρ(y)^k v0 / k!]` from `P(C ⊕ T)` to
/// `P(V)`, returned in the basis of `V`. Since raising is multiplication
/// followed by projection, `ρ(y)^k v0 = κ_1⋯κ_k π_k(ℓ^k)` with `ℓ = Σ y_b x_b`.
pub fn evaluate_phi(
    module: &LadderModule,
    x0: &Rational,
    y: &[Rational],
) -> Result<SparseVec, MinusculeError> {
    let ladder = &module.projections.ladder;
    let n = ladder.base_dim;
    if y.len() != n {
        return Err(MinusculeError::PointDimension {
            expected: n,
            found: y.len(),
        });
    }
    let d = ladder.degree();
    let ell = SparseVec::from_dense(y);
    let mut out = SparseVec::new();
    let mut coef = Rational::one();
    for k in 0..=d {
        if k > 0 {
            coef = &(&coef * &module.kappa[k - 1]) / &Rational::from_int(k as i64);
        }
        let c = &coef * &x0.pow((d - k) as u32);
        if c.is_zero() {
            continue;
        }
        let pk = module
            .projections
            .project(k, &symmetric_power_vector(&ell, n, k));
        out = out.add_scaled(&c, &pk.shifted(ladder.offset(k)));
    }
    if out.is_zero() {
        return Err(MinusculeError::Indeterminate);
    }
    Ok(out)
}
