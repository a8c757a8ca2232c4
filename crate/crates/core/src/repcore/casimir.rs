use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LieAlgebra, RepError, Representation};
use crate::exactlin::{
    inverse, kernel_of_rows, EchelonBuilder, Rational, RationalMatrix, SparseVec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirReport {
    pub label: String,
    pub matrix: RationalMatrix,
    /// Present iff the matrix is a homothety.
    pub scalar: Option<Rational>,
    /// Eigenvalues with eigenspace dimensions, when the matrix is killed by
    /// a product of at most two rational linear factors.
    pub spectrum: Vec<(Rational, usize)>,
}

/// Pairs `(i, Y_i)` where `Y_i` is dual to the basis vector `x_i` under
/// `form` restricted to `indices`.
pub fn dual_basis(
    form: &RationalMatrix,
    indices: &[usize],
) -> Result<Vec<(usize, SparseVec)>, RepError> {
    if indices.is_empty() {
        return Ok(Vec::new());
    }
    let restricted = form.select(indices, indices);
    let inv = inverse(&restricted).ok_or(RepError::DegenerateForm)?;
    Ok(indices
        .iter()
        .enumerate()
        .map(|(a, &i)| {
            let y =
                SparseVec::from_pairs(inv.column(a).iter().map(|(b, x)| (indices[b], x.clone())));
            (i, y)
        })
        .collect())
}

/// `Σ ρ(X_i) ρ(Y_i)` over the given dual pairs.
pub fn casimir_matrix(r: &Representation, pairs: &[(usize, SparseVec)]) -> RationalMatrix {
    let n = r.module_dim();
    pairs
        .par_iter()
        .map(|(i, y)| r.rho(*i).mul(&r.rho_of(y)))
        .reduce(|| RationalMatrix::zeros(n, n), |a, b| a.add(&b))
}

/// Casimir of the semisimple part (non-abelian ideals) of the algebra with
/// respect to `form`.
pub fn casimir_on(r: &Representation, form: &RationalMatrix) -> Result<CasimirReport, RepError> {
    let idx = r.algebra().semisimple_indices();
    let pairs = dual_basis(form, &idx)?;
    Ok(report(r.label(), casimir_matrix(r, &pairs)))
}

pub fn report(label: &str, matrix: RationalMatrix) -> CasimirReport {
    let scalar = matrix.as_scalar();
    let spectrum = match &scalar {
        Some(c) => vec![(c.clone(), matrix.rows())],
        None => two_eigenvalues(&matrix).unwrap_or_default(),
    };
    CasimirReport {
        label: label.to_string(),
        matrix,
        scalar,
        spectrum,
    }
}

/// If `M^2 = sM - pI` for rational roots of `t^2 - st + p`, returns each
/// root with its eigenspace dimension.
pub fn two_eigenvalues(m: &RationalMatrix) -> Option<Vec<(Rational, usize)>> {
    let n = m.rows();
    if n == 0 {
        return None;
    }
    let m2 = m.mul(m);
    let mut positions: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, j, _) in m.triplets().chain(m2.triplets()) {
        positions.insert((i, j));
    }
    for i in 0..n {
        positions.insert((i, i));
    }
    // Unknowns (s, p, w) with w the coefficient of M^2, solving
    // w M^2 - s M + p I = 0 and requiring w != 0.
    let rows: Vec<SparseVec> = positions
        .iter()
        .map(|&(i, j)| {
            let id = if i == j {
                Rational::one()
            } else {
                Rational::zero()
            };
            SparseVec::from_pairs([(0, -m.get(i, j)), (1, id), (2, m2.get(i, j))])
        })
        .collect();
    let k = kernel_of_rows(3, rows.iter());
    let sol = k.basis().iter().find(|v| !v.get(2).is_zero())?;
    let w = sol.get(2);
    let (s, p) = (sol.get(0) / &w, sol.get(1) / &w);
    let disc = &(&s * &s) - &(Rational::from_int(4) * &p);
    let root = disc.sqrt_exact()?;
    let half = Rational::new(1, 2);
    let mut eig = vec![&(&s + &root) * &half];
    if !root.is_zero() {
        eig.push(&(&s - &root) * &half);
    }
    eig.sort();
    Some(
        eig.into_iter()
            .map(|lambda| {
                let shifted = m.sub(&RationalMatrix::scalar(n, &lambda));
                let d = crate::exactlin::kernel(&shifted).dim();
                (lambda, d)
            })
            .collect(),
    )
}

/// One invariant form per ideal block: the Killing form on non-abelian
/// blocks and the identity form on abelian ones, each supported on its
/// block.
pub fn block_forms(alg: &LieAlgebra) -> Vec<(Vec<usize>, RationalMatrix)> {
    alg.ideals()
        .iter()
        .map(|b| {
            let form = if b.abelian {
                RationalMatrix::identity(b.indices.len())
            } else {
                alg.killing().select(&b.indices, &b.indices)
            };
            (b.indices.clone(), form)
        })
        .collect()
}

/// Casimir of each ideal block on the module, with the block forms above.
pub fn block_casimirs(r: &Representation) -> Result<Vec<RationalMatrix>, RepError> {
    block_forms(r.algebra())
        .into_iter()
        .map(|(idx, form)| {
            let inv = inverse(&form).ok_or(RepError::DegenerateForm)?;
            let pairs: Vec<(usize, SparseVec)> = idx
                .iter()
                .enumerate()
                .map(|(a, &i)| {
                    (
                        i,
                        SparseVec::from_pairs(
                            inv.column(a).iter().map(|(b, x)| (idx[b], x.clone())),
                        ),
                    )
                })
                .collect();
            Ok(casimir_matrix(r, &pairs))
        })
        .collect()
}

/// Finds block weights `t` (with `t_0 = 1`) and `c` such that
/// `Σ t_k M_k = c·target`. Returns `None` unless the solution is unique up
/// to scale with every `t_k` nonzero.
pub fn solve_block_weights(
    mats: &[RationalMatrix],
    target: &RationalMatrix,
) -> Option<(Vec<Rational>, Rational)> {
    let r = mats.len();
    let mut positions: BTreeSet<(usize, usize)> = BTreeSet::new();
    for m in mats.iter().chain(std::iter::once(target)) {
        for (i, j, _) in m.triplets() {
            positions.insert((i, j));
        }
    }
    let mut b = EchelonBuilder::new(r + 1);
    for &(i, j) in &positions {
        let row = SparseVec::from_pairs(
            mats.iter()
                .enumerate()
                .map(|(k, m)| (k, m.get(i, j)))
                .chain(std::iter::once((r, -target.get(i, j)))),
        );
        b.insert(&row);
        if b.rank() == r + 1 {
            return None;
        }
    }
    let rows = b.finish();
    let k = kernel_of_rows(r + 1, rows.iter());
    if k.dim() != 1 {
        return None;
    }
    let v = &k.basis()[0];
    if r == 0 {
        return Some((Vec::new(), Rational::zero()));
    }
    let t0 = v.get(0);
    if t0.is_zero() {
        return None;
    }
    let t: Vec<Rational> = (0..r).map(|k| v.get(k) / &t0).collect();
    if t.iter().any(|x| x.is_zero()) {
        return None;
    }
    Some((t, v.get(r) / &t0))
}

/// The invariant form `⊕ B_k / t_k` for block weights `t`.
pub fn weighted_form(alg: &LieAlgebra, weights: &[Rational]) -> RationalMatrix {
    let n = alg.dim();
    let mut trip = Vec::new();
    for ((idx, form), t) in block_forms(alg).into_iter().zip(weights) {
        for (a, b, x) in form.triplets() {
            trip.push((idx[a], idx[b], x / t));
        }
    }
    RationalMatrix::from_triplets(n, n, trip)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    #[test]
    fn sl2_standard_casimir() {
        let t = Representation::sl2_standard();
        let rep = casimir_on(&t, t.algebra().killing()).unwrap();
        assert_eq!(rep.scalar, Some(Rational::new(3, 8)));
    }

    #[test]
    fn sl2_adjoint_casimir_is_one() {
        let g = Arc::new(LieAlgebra::sl2());
        let ad = Representation::adjoint(g.clone(), None);
        let rep = casimir_on(&ad, g.killing()).unwrap();
        assert_eq!(rep.scalar, Some(Rational::one()));
    }

    #[test]
    fn trivial_module_casimir_zero() {
        let g = Arc::new(LieAlgebra::sl2());
        let t = Representation::trivial(g.clone(), 2);
        assert_eq!(
            casimir_on(&t, g.killing()).unwrap().scalar,
            Some(Rational::zero())
        );
    }

    #[test]
    fn two_eigenvalues_detected() {
        let m = RationalMatrix::from_i64(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(
            two_eigenvalues(&m),
            Some(vec![(Rational::zero(), 1), (Rational::from_int(2), 2)])
        );
        let m3 = RationalMatrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert_eq!(two_eigenvalues(&m3), None);
    }

    #[test]
    fn degenerate_form_is_error() {
        let t = Representation::sl2_standard();
        assert!(matches!(
            casimir_on(&t, &RationalMatrix::zeros(3, 3)),
            Err(RepError::DegenerateForm)
        ));
    }
}
