use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{LieAlgebra, RepError};
use crate::exactlin::{
    fischer_weights, induced_power_matrix, sort_with_sign, span_closure, tensor_action,
    Accumulator, EchelonBuilder, Rational, RationalMatrix, SparseVec, Subspace, TensorIndex,
};

/// A Lie algebra acting on `Q^n` through explicit matrices.
///
/// `contravariant` holds the diagonal of a positive definite form for which
/// the adjoint of every action matrix is again an action matrix (up to
/// scale). Derived constructions carry it along; it is what makes
/// orthogonal projections onto submodules equivariant.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    action: Vec<RationalMatrix>,
    extreme: Option<SparseVec>,
    contravariant: Vec<Rational>,
    label: String,
}

impl Representation {
    pub fn new(
        algebra: Arc<LieAlgebra>,
        action: Vec<RationalMatrix>,
        extreme: Option<SparseVec>,
        label: impl Into<String>,
    ) -> Result<Self, RepError> {
        if action.len() != algebra.dim() {
            return Err(RepError::DimensionMismatch {
                context: "action count",
                expected: algebra.dim(),
                found: action.len(),
            });
        }
        let n = match (action.first(), &extreme) {
            (Some(m), _) => m.rows(),
            (None, Some(v)) => v.max_index().map_or(0, |m| m + 1),
            (None, None) => 0,
        };
        Self::with_dim(algebra, n, action, extreme, label)
    }

    /// Like [`Representation::new`] but with an explicit module dimension,
    /// needed when the algebra is zero.
    pub fn with_dim(
        algebra: Arc<LieAlgebra>,
        module_dim: usize,
        action: Vec<RationalMatrix>,
        extreme: Option<SparseVec>,
        label: impl Into<String>,
    ) -> Result<Self, RepError> {
        for m in &action {
            if m.rows() != module_dim || m.cols() != module_dim {
                return Err(RepError::DimensionMismatch {
                    context: "action matrix",
                    expected: module_dim,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        if let Some(v) = &extreme {
            if v.is_zero() {
                return Err(RepError::MissingExtreme);
            }
            if v.max_index().unwrap() >= module_dim {
                return Err(RepError::DimensionMismatch {
                    context: "extreme vector",
                    expected: module_dim,
                    found: v.max_index().unwrap() + 1,
                });
            }
        }
        Ok(Representation {
            algebra,
            action,
            extreme,
            contravariant: vec![Rational::one(); module_dim],
            label: label.into(),
        })
    }

    pub fn with_extreme(mut self, v: SparseVec) -> Self {
        assert!(!v.is_zero() && v.max_index().unwrap() < self.module_dim());
        self.extreme = Some(v);
        self
    }

    pub fn with_contravariant(mut self, g: Vec<Rational>) -> Self {
        assert_eq!(g.len(), self.module_dim());
        assert!(g.iter().all(|x| !x.is_zero()));
        self.contravariant = g;
        self
    }

    /// The defining module of `sl2` with extreme vector `e_1`.
    pub fn sl2_standard() -> Self {
        let alg = Arc::new(LieAlgebra::sl2());
        let action = vec![
            RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]),
            RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]),
            RationalMatrix::from_i64(&[&[0, 0], &[1, 0]]),
        ];
        Self::new(alg, action, Some(SparseVec::unit(0)), "C2").unwrap()
    }

    /// The one-dimensional module of the zero algebra.
    pub fn point() -> Self {
        Self::with_dim(
            Arc::new(LieAlgebra::zero()),
            1,
            Vec::new(),
            Some(SparseVec::unit(0)),
            "C",
        )
        .unwrap()
    }

    pub fn adjoint(algebra: Arc<LieAlgebra>, extreme: Option<SparseVec>) -> Self {
        let action = algebra.ad_matrices().to_vec();
        let n = algebra.dim();
        let label = format!("ad({})", algebra.label());
        Self::with_dim(algebra, n, action, extreme, label).unwrap()
    }

    pub fn trivial(algebra: Arc<LieAlgebra>, dim: usize) -> Self {
        let action = vec![RationalMatrix::zeros(dim, dim); algebra.dim()];
        Self::with_dim(algebra, dim, action, None, "trivial").unwrap()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.contravariant.len()
    }

    pub fn action(&self) -> &[RationalMatrix] {
        &self.action
    }

    pub fn rho(&self, i: usize) -> &RationalMatrix {
        &self.action[i]
    }

    /// Action of an arbitrary algebra element.
    pub fn rho_of(&self, x: &SparseVec) -> RationalMatrix {
        let n = self.module_dim();
        let mut m = RationalMatrix::zeros(n, n);
        for (i, a) in x.iter() {
            m = m.add_scaled(a, &self.action[i]);
        }
        m
    }

    pub fn extreme(&self) -> Option<&SparseVec> {
        self.extreme.as_ref()
    }

    pub fn require_extreme(&self) -> Result<&SparseVec, RepError> {
        self.extreme.as_ref().ok_or(RepError::MissingExtreme)
    }

    pub fn contravariant(&self) -> &[Rational] {
        &self.contravariant
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    /// First basis pair `(i, j)` with `rho([x_i,x_j]) != [rho x_i, rho x_j]`.
    pub fn homomorphism_violation(&self) -> Option<(usize, usize)> {
        let n = self.algebra.dim();
        (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                let lhs = self.rho_of(self.algebra.bracket_basis(i, j));
                if lhs != self.action[i].commutator(&self.action[j]) {
                    return Some((i, j));
                }
            }
            None
        })
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_violation().is_none()
    }

    /// Whether the extreme vector generates the whole module.
    pub fn extreme_generates(&self) -> bool {
        match &self.extreme {
            None => false,
            Some(v) => span_closure(&self.action, std::slice::from_ref(v), self.module_dim())
                .map(|s| s.is_full())
                .unwrap_or(false),
        }
    }

    pub fn symmetric_power(&self, k: usize) -> Representation {
        let n = self.module_dim();
        let idx = TensorIndex::symmetric(n, k);
        let action = self
            .action
            .par_iter()
            .map(|a| induced_power_matrix(a, &idx).unwrap())
            .collect();
        let extreme = self
            .extreme
            .as_ref()
            .map(|v| symmetric_power_vector(v, n, k));
        let g = fischer_weights(&self.contravariant, &idx);
        Representation {
            algebra: self.algebra.clone(),
            action,
            extreme,
            contravariant: g,
            label: format!("S{}({})", k, self.label),
        }
    }

    pub fn exterior_power(&self, k: usize) -> Representation {
        let n = self.module_dim();
        let idx = TensorIndex::exterior(n, k);
        let action = self
            .action
            .par_iter()
            .map(|a| induced_power_matrix(a, &idx).unwrap())
            .collect();
        let g = idx
            .tuples()
            .map(|t| {
                t.iter()
                    .map(|&a| self.contravariant[a].clone())
                    .product_rat()
            })
            .collect();
        Representation {
            algebra: self.algebra.clone(),
            action,
            extreme: None,
            contravariant: g,
            label: format!("L{}({})", k, self.label),
        }
    }

    /// Dual module, acting by negative transposes. The extreme covector is
    /// the coordinate functional of the extreme vector, which must therefore
    /// be a basis vector.
    pub fn dual(&self) -> Result<Representation, RepError> {
        let extreme = match &self.extreme {
            None => None,
            Some(v) if v.nnz() == 1 => Some(SparseVec::unit(v.leading().unwrap().0)),
            Some(_) => return Err(RepError::ExtremeNotBasisVector),
        };
        let label = match self
            .label
            .strip_prefix("dual(")
            .and_then(|s| s.strip_suffix(')'))
        {
            Some(inner) => inner.to_string(),
            None => format!("dual({})", self.label),
        };
        Ok(Representation {
            algebra: self.algebra.clone(),
            action: self
                .action
                .iter()
                .map(|a| a.transpose().scale(&-Rational::one()))
                .collect(),
            extreme,
            contravariant: self.contravariant.iter().map(|g| g.recip()).collect(),
            label,
        })
    }

    /// `a ⊗ b` as a module over the direct sum of the two algebras.
    pub fn outer_tensor(a: &Representation, b: &Representation) -> Representation {
        let label = format!("{} x {}", a.label, b.label);
        let alg = Arc::new(LieAlgebra::direct_sum(
            &a.algebra,
            &b.algebra,
            format!("{} + {}", a.algebra.label(), b.algebra.label()),
        ));
        Self::outer_tensor_over(alg, a, b, label)
    }

    /// Outer tensor product over a caller-supplied sum algebra whose basis is
    /// that of `a`'s algebra followed by `b`'s.
    pub fn outer_tensor_over(
        alg: Arc<LieAlgebra>,
        a: &Representation,
        b: &Representation,
        label: impl Into<String>,
    ) -> Representation {
        assert_eq!(alg.dim(), a.algebra.dim() + b.algebra.dim());
        let dims = [a.module_dim(), b.module_dim()];
        let mut action: Vec<RationalMatrix> = a
            .action
            .par_iter()
            .map(|m| tensor_action(&dims, &[Some(m), None]))
            .collect();
        action.extend(
            b.action
                .par_iter()
                .map(|m| tensor_action(&dims, &[None, Some(m)]))
                .collect::<Vec<_>>(),
        );
        let extreme = match (&a.extreme, &b.extreme) {
            (Some(u), Some(v)) => Some(kron_vec(u, v, dims[1])),
            _ => None,
        };
        let g = a
            .contravariant
            .iter()
            .flat_map(|x| b.contravariant.iter().map(move |y| x * y))
            .collect();
        Representation {
            algebra: alg,
            action,
            extreme,
            contravariant: g,
            label: label.into(),
        }
    }

    /// Block sum of two modules of the same algebra; the extreme vector is
    /// taken from `a`.
    pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation, RepError> {
        if a.algebra.dim() != b.algebra.dim() {
            return Err(RepError::DimensionMismatch {
                context: "direct sum algebras",
                expected: a.algebra.dim(),
                found: b.algebra.dim(),
            });
        }
        let mut g = a.contravariant.clone();
        g.extend(b.contravariant.iter().cloned());
        Ok(Representation {
            algebra: a.algebra.clone(),
            action: a
                .action
                .iter()
                .zip(&b.action)
                .map(|(x, y)| x.direct_sum(y))
                .collect(),
            extreme: a.extreme.clone(),
            contravariant: g,
            label: format!("{} + {}", a.label, b.label),
        })
    }

    /// Same module viewed over a relabelled copy of the algebra.
    pub fn with_algebra(&self, algebra: Arc<LieAlgebra>) -> Representation {
        assert_eq!(algebra.dim(), self.algebra.dim());
        Representation {
            algebra,
            ..self.clone()
        }
    }
}

trait ProductRat {
    fn product_rat(self) -> Rational;
}

impl<I: Iterator<Item = Rational>> ProductRat for I {
    fn product_rat(self) -> Rational {
        self.fold(Rational::one(), |a, b| a * b)
    }
}

pub fn kron_vec(u: &SparseVec, v: &SparseVec, right_dim: usize) -> SparseVec {
    SparseVec::from_pairs(
        u.iter()
            .flat_map(|(i, x)| v.iter().map(move |(j, y)| (i * right_dim + j, x * y))),
    )
}

/// `v^k` in the monomial basis of `S^k`.
pub fn symmetric_power_vector(v: &SparseVec, n: usize, k: usize) -> SparseVec {
    let mut cur: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    cur.insert(Vec::new(), Rational::one());
    for _ in 0..k {
        let mut next: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (t, c) in &cur {
            for (i, x) in v.iter() {
                let mut t2 = t.clone();
                let pos = t2.partition_point(|&a| a <= i);
                t2.insert(pos, i);
                *next.entry(t2).or_insert_with(Rational::zero) += &(c * x);
            }
        }
        cur = next;
    }
    let idx = TensorIndex::symmetric(n, k);
    SparseVec::from_pairs(cur.into_iter().map(|(t, c)| (idx.rank(&t), c)))
}

/// `u ∧ w` in the basis of `Λ^2` (increasing pairs).
pub fn wedge2(u: &SparseVec, w: &SparseVec, n: usize) -> SparseVec {
    let idx = TensorIndex::exterior(n, 2);
    let mut acc = Accumulator::new(idx.dim());
    for (a, x) in u.iter() {
        for (b, y) in w.iter() {
            let mut t = [a, b];
            if let Some(even) = sort_with_sign(&mut t) {
                let c = x * y;
                acc.add(idx.rank(&t), &if even { c } else { -c });
            }
        }
    }
    acc.take()
}

/// Vectors killed by every action matrix.
pub fn invariant_vectors(r: &Representation) -> Subspace {
    let n = r.module_dim();
    let mut b = EchelonBuilder::new(n);
    'outer: for m in r.action() {
        for row in m.row_vectors() {
            b.insert(&row);
            if b.rank() == n {
                break 'outer;
            }
        }
    }
    crate::exactlin::annihilator(&Subspace::from_builder(b))
}

/// Rescales coefficients of `S^k T` vectors so that the plain dot product
/// becomes the evaluation pairing with polynomials on `T`.
pub fn evaluation_rescale(v: &SparseVec, idx: &TensorIndex) -> SparseVec {
    SparseVec::from_sorted(
        v.iter()
            .map(|(i, x)| (i, x / &multinomial(&idx.unrank(i))))
            .collect(),
    )
}

/// `k! / α!` for the exponent vector of a sorted monomial tuple.
pub fn multinomial(t: &[usize]) -> Rational {
    let mut num = Rational::one();
    let mut run = 0i64;
    for (p, &a) in t.iter().enumerate() {
        run = if p > 0 && t[p - 1] == a { run + 1 } else { 1 };
        num = &num * &Rational::from_int(p as i64 + 1) / &Rational::from_int(run);
    }
    num
}

/// The degree-2 ideal of the closed orbit: the annihilator in `S^2 T*` of
/// the submodule of `S^2 T` generated by the square of the extreme vector.
/// Output coordinates are polynomial coefficients in the monomial basis.
pub fn cartan_complement_ideal(r: &Representation) -> Result<Subspace, RepError> {
    let cartan = cartan_component(r)?;
    let idx = TensorIndex::symmetric(r.module_dim(), 2);
    let scaled: Vec<SparseVec> = cartan
        .basis()
        .iter()
        .map(|b| evaluation_rescale(b, &idx))
        .collect();
    let s = Subspace::from_vectors(idx.dim(), scaled.iter());
    Ok(crate::exactlin::annihilator(&s))
}

/// Submodule of `S^2 T` generated by `v^2`.
pub fn cartan_component(r: &Representation) -> Result<Subspace, RepError> {
    let v = r.require_extreme()?;
    let n = r.module_dim();
    let idx = TensorIndex::symmetric(n, 2);
    let actions: Vec<RationalMatrix> = r
        .action()
        .par_iter()
        .map(|a| induced_power_matrix(a, &idx).unwrap())
        .collect();
    let seed = symmetric_power_vector(v, n, 2);
    Ok(span_closure(&actions, &[seed], idx.dim())?)
}

/// Linear span of the cone over the variety of tangent lines: the
/// submodule of `Λ^2 T` generated by `v ∧ X v`.
pub fn tangent_line_span(r: &Representation) -> Result<Subspace, RepError> {
    let v = r.require_extreme()?;
    let n = r.module_dim();
    let idx = TensorIndex::exterior(n, 2);
    let seeds: Vec<SparseVec> = r
        .action()
        .iter()
        .map(|a| wedge2(v, &a.apply(v), n))
        .filter(|s| !s.is_zero())
        .collect();
    let actions: Vec<RationalMatrix> = r
        .action()
        .par_iter()
        .map(|a| induced_power_matrix(a, &idx).unwrap())
        .collect();
    Ok(span_closure(&actions, &seeds, idx.dim())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_is_homomorphism() {
        let t = Representation::sl2_standard();
        assert!(t.is_homomorphism());
        assert!(t.extreme_generates());
        let d = t.dual().unwrap();
        assert!(d.is_homomorphism());
        assert_eq!(d.dual().unwrap().action(), t.action());
    }

    #[test]
    fn powers() {
        let t = Representation::sl2_standard();
        let s3 = t.symmetric_power(3);
        assert_eq!(s3.module_dim(), 4);
        assert_eq!(s3.extreme(), Some(&SparseVec::unit(0)));
        assert!(s3.is_homomorphism());
        assert_eq!(s3.exterior_power(2).module_dim(), 6);
        assert_eq!(s3.contravariant(), &[6, 2, 2, 6].map(Rational::from_int));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[0, 0]), Rational::one());
        assert_eq!(multinomial(&[0, 1]), Rational::from_int(2));
        assert_eq!(multinomial(&[0, 0, 1]), Rational::from_int(3));
        assert_eq!(multinomial(&[]), Rational::one());
    }

    #[test]
    fn sym_power_of_general_vector() {
        let v = SparseVec::from_pairs([(0, Rational::from_int(1)), (1, Rational::from_int(2))]);
        // (x + 2y)^2 = x^2 + 4xy + 4y^2
        assert_eq!(
            symmetric_power_vector(&v, 2, 2),
            SparseVec::from_dense(&[1, 4, 4].map(Rational::from_int))
        );
    }
}
