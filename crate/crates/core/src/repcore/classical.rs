use std::sync::Arc;

use super::{LieAlgebra, RepError, Representation};
use crate::exactlin::{CoordinateSolver, Rational, RationalMatrix, SparseVec};

fn vectorize(m: &RationalMatrix) -> SparseVec {
    let n = m.rows();
    SparseVec::from_pairs(m.triplets().map(|(i, j, x)| (i * n + j, x.clone())))
}

/// The Lie algebra spanned by a family of square matrices closed under
/// commutators, together with its defining module.
pub fn matrix_algebra(
    basis: Vec<RationalMatrix>,
    extreme: Option<SparseVec>,
    algebra_label: &str,
    module_label: &str,
) -> Result<Representation, RepError> {
    let n = basis.first().map_or(0, |m| m.rows());
    let vecs: Vec<SparseVec> = basis.iter().map(vectorize).collect();
    let solver = CoordinateSolver::new(n * n, &vecs).ok_or(RepError::DimensionMismatch {
        context: "matrix basis is linearly dependent",
        expected: basis.len(),
        found: 0,
    })?;
    let d = basis.len();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let c = vectorize(&basis[i].commutator(&basis[j]));
            let coords =
                solver
                    .coordinates_checked(&c, &vecs)
                    .ok_or(RepError::DimensionMismatch {
                        context: "matrix family not closed under brackets",
                        expected: d,
                        found: d + 1,
                    })?;
            if !coords.is_zero() {
                brackets.push((i, j, coords));
            }
        }
    }
    let alg = Arc::new(LieAlgebra::from_brackets(d, brackets, algebra_label));
    Representation::with_dim(alg, n, basis, extreme, module_label)
}

fn unit(n: usize, i: usize, j: usize) -> RationalMatrix {
    RationalMatrix::from_triplets(n, n, [(i, j, Rational::one())])
}

/// `sl_n` on `Q^n` with basis `E_ij` (i != j, row-major) followed by
/// `E_ii - E_{i+1,i+1}`.
pub fn sl_standard(n: usize) -> Representation {
    assert!(n >= 2);
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(unit(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(unit(n, i, i).sub(&unit(n, i + 1, i + 1)));
    }
    matrix_algebra(
        basis,
        Some(SparseVec::unit(0)),
        &format!("sl{n}"),
        &format!("C{n}"),
    )
    .unwrap()
}

/// `sp_{2m}` on `Q^{2m}` preserving `J = [[0, I], [-I, 0]]`.
pub fn sp_standard(m: usize) -> Representation {
    assert!(m >= 1);
    let n = 2 * m;
    let mut basis = Vec::new();
    for i in 0..m {
        for j in 0..m {
            // [[E_ij, 0], [0, -E_ji]]
            basis.push(unit(n, i, j).sub(&unit(n, m + j, m + i)));
        }
    }
    for i in 0..m {
        for j in i..m {
            let b = if i == j {
                unit(n, i, m + i)
            } else {
                unit(n, i, m + j).add(&unit(n, j, m + i))
            };
            let c = if i == j {
                unit(n, m + i, i)
            } else {
                unit(n, m + i, j).add(&unit(n, m + j, i))
            };
            basis.push(b);
            basis.push(c);
        }
    }
    matrix_algebra(
        basis,
        Some(SparseVec::unit(0)),
        &format!("sp{n}"),
        &format!("C{n}"),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl3_and_sp4() {
        let t = sl_standard(3);
        assert_eq!(t.algebra().dim(), 8);
        assert!(t.is_homomorphism());
        assert!(t.algebra().is_simple_by_closure(8, 3));
        let s = sp_standard(2);
        assert_eq!(s.algebra().dim(), 10);
        assert!(s.is_homomorphism());
        assert!(s.algebra().is_simple_by_closure(10, 3));
        assert_eq!(sp_standard(1).algebra().dim(), 3);
    }
}
