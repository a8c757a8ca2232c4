use super::{ExactLinError, Rational, RationalMatrix, SparseVec, TensorIndex};

/// Matrix of the derivation action of `a` on the power space described by
/// `idx`. For a tensor index all factors must have the size of `a`.
pub fn induced_power_matrix(
    a: &RationalMatrix,
    idx: &TensorIndex,
) -> Result<RationalMatrix, ExactLinError> {
    let n = a.rows();
    if !a.is_square()
        || idx.base().is_some_and(|b| b != n)
        || (idx.base().is_none() && idx.degree() > 0)
    {
        return Err(ExactLinError::DimensionMismatch {
            context: "induced_power_matrix",
            expected: idx.base().unwrap_or(0),
            found: n,
        });
    }
    let dim = idx.dim();
    let mut columns = Vec::with_capacity(dim);
    let mut work: Vec<usize> = Vec::with_capacity(idx.degree());
    for r in 0..dim {
        let tuple = idx.unrank(r);
        let mut pairs: Vec<(usize, Rational)> = Vec::new();
        for p in 0..tuple.len() {
            // Repeated symmetric factors are handled by summing over every
            // position, which is exactly the Leibniz rule on monomials.
            for (i, x) in a.column(tuple[p]).iter() {
                work.clear();
                work.extend_from_slice(&tuple);
                work[p] = i;
                match idx {
                    TensorIndex::Tensor { .. } => pairs.push((idx.rank(&work), x.clone())),
                    TensorIndex::Symmetric { .. } => {
                        work.sort_unstable();
                        pairs.push((idx.rank(&work), x.clone()));
                    }
                    TensorIndex::Exterior { .. } => {
                        if let Some(sign) = sort_with_sign(&mut work) {
                            pairs.push((idx.rank(&work), if sign { x.clone() } else { -x }));
                        }
                    }
                }
            }
        }
        columns.push(SparseVec::from_pairs(pairs));
    }
    Ok(RationalMatrix::from_columns(dim, columns))
}

/// Sorts in place; returns `Some(true)` for an even permutation, `Some(false)`
/// for odd, `None` if two entries coincide.
pub fn sort_with_sign(v: &mut [usize]) -> Option<bool> {
    let mut even = true;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            even = !even;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(even)
}

/// Action of `mats[i]` on the `i`-th factor of a tensor product, summed
/// over factors (entries may be `None` for factors acted on trivially).
pub fn tensor_action(factor_dims: &[usize], mats: &[Option<&RationalMatrix>]) -> RationalMatrix {
    assert_eq!(factor_dims.len(), mats.len());
    let mut total: Option<RationalMatrix> = None;
    for (k, m) in mats.iter().enumerate() {
        let Some(m) = m else { continue };
        assert_eq!(m.rows(), factor_dims[k]);
        let left: usize = factor_dims[..k].iter().product();
        let right: usize = factor_dims[k + 1..].iter().product();
        let term = RationalMatrix::identity(left)
            .kron(m)
            .kron(&RationalMatrix::identity(right));
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term),
        });
    }
    let dim: usize = factor_dims.iter().product();
    total.unwrap_or_else(|| RationalMatrix::zeros(dim, dim))
}

/// `induced_power_matrix(a, S^k) * p` without forming the matrix.
pub fn symmetric_derivation_apply(
    a: &RationalMatrix,
    p: &SparseVec,
    idx: &TensorIndex,
) -> SparseVec {
    let mut pairs: Vec<(usize, Rational)> = Vec::new();
    let mut work: Vec<usize> = Vec::with_capacity(idx.degree());
    for (r, c) in p.iter() {
        let tuple = idx.unrank(r);
        for pos in 0..tuple.len() {
            for (i, x) in a.column(tuple[pos]).iter() {
                work.clear();
                work.extend_from_slice(&tuple);
                work[pos] = i;
                work.sort_unstable();
                pairs.push((idx.rank(&work), c * x));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

/// `∂p/∂x_a` for `p` in `S^k`, landing in `S^{k-1}`.
pub fn symmetric_derivative(
    p: &SparseVec,
    a: usize,
    idx: &TensorIndex,
    lower: &TensorIndex,
) -> SparseVec {
    let mut pairs = Vec::new();
    for (r, c) in p.iter() {
        let mut t = idx.unrank(r);
        let mult = t.iter().filter(|&&b| b == a).count();
        if mult == 0 {
            continue;
        }
        let pos = t.iter().position(|&b| b == a).unwrap();
        t.remove(pos);
        pairs.push((lower.rank(&t), c * &Rational::from_int(mult as i64)));
    }
    SparseVec::from_pairs(pairs)
}

/// `x_a · p` for `p` in `S^k`, landing in `S^{k+1}`.
pub fn symmetric_multiply(
    p: &SparseVec,
    a: usize,
    idx: &TensorIndex,
    upper: &TensorIndex,
) -> SparseVec {
    SparseVec::from_pairs(p.iter().map(|(r, c)| {
        let mut t = idx.unrank(r);
        let pos = t.partition_point(|&b| b <= a);
        t.insert(pos, a);
        (upper.rank(&t), c.clone())
    }))
}

/// Diagonal of the Fischer form on `S^k` induced by the diagonal form `g`
/// on the base: `x^α ↦ α! Π g_a^{α_a}`.
pub fn fischer_weights(g: &[Rational], idx: &TensorIndex) -> Vec<Rational> {
    idx.tuples()
        .map(|t| {
            let mut w = Rational::one();
            let mut run = 0i64;
            for (p, &a) in t.iter().enumerate() {
                run = if p > 0 && t[p - 1] == a { run + 1 } else { 1 };
                w = &w * &Rational::from_int(run) * &g[a];
            }
            w
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_wedge_two() {
        let m = induced_power_matrix(&RationalMatrix::identity(4), &TensorIndex::exterior(4, 2))
            .unwrap();
        assert_eq!(m.as_scalar(), Some(Rational::from_int(2)));
    }

    #[test]
    fn sl2_weights_on_cubics() {
        let h = RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let m = induced_power_matrix(&h, &TensorIndex::symmetric(2, 3)).unwrap();
        let diag: Vec<Rational> = (0..4).map(|i| m.get(i, i)).collect();
        assert_eq!(diag, [3, 1, -1, -3].map(Rational::from_int));
        assert_eq!(m.nnz(), 4);
    }

    #[test]
    fn raising_on_quadrics() {
        let e = RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let idx = TensorIndex::symmetric(2, 2);
        let m = induced_power_matrix(&e, &idx).unwrap();
        let img = m.apply(&SparseVec::unit(idx.rank(&[1, 1])));
        assert_eq!(
            img,
            SparseVec::from_pairs([(idx.rank(&[0, 1]), Rational::from_int(2))])
        );
    }

    #[test]
    fn mismatch_is_error() {
        assert!(
            induced_power_matrix(&RationalMatrix::identity(3), &TensorIndex::symmetric(2, 2))
                .is_err()
        );
    }

    #[test]
    fn signs() {
        let mut v = [2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(true));
        assert_eq!(v, [0, 1, 2]);
        assert_eq!(sort_with_sign(&mut [1, 0]), Some(false));
        assert_eq!(sort_with_sign(&mut [1, 1]), None);
    }
}
