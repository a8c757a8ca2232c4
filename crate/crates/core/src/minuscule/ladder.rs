use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MinusculeError;
use crate::exactlin::{kernel_of_rows, Rational, SparseVec, Subspace, TensorIndex};
use crate::repcore::{cartan_complement_ideal, Representation};

/// Prolongation stops with an error if it reaches this degree.
pub const PROLONGATION_GUARD: usize = 16;

/// Default bound on `dim S^k T` for a prolongation step.
pub const PROLONGATION_MONOMIAL_CAP: usize = 500_000;

/// The graded pieces `V_0, …, V_d` with `V_j ⊂ S^j T` in monomial
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealLadder {
    pub base_dim: usize,
    pub pieces: Vec<Subspace>,
}

impl IdealLadder {
    pub fn degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|p| p.dim()).sum()
    }

    pub fn index(&self, j: usize) -> TensorIndex {
        TensorIndex::symmetric(self.base_dim, j)
    }

    /// Offset of `V_j` in the concatenated basis of `V`.
    pub fn offset(&self, j: usize) -> usize {
        self.pieces[..j].iter().map(|p| p.dim()).sum()
    }
}

/// Index of the monomial `t` with one copy of its `p`-th entry removed.
fn drop_at(t: &[usize], p: usize) -> Vec<usize> {
    let mut u = t.to_vec();
    u.remove(p);
    u
}

/// `∂_a` of every monomial of degree `k`, as `(a, monomial index of degree
/// k-1, multiplicity)`.
pub fn monomial_derivatives(t: &[usize], lower: &TensorIndex) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    let mut p = 0;
    while p < t.len() {
        let a = t[p];
        let mut q = p;
        while q < t.len() && t[q] == a {
            q += 1;
        }
        out.push((a, lower.rank(&drop_at(t, p)), (q - p) as i64));
        p = q;
    }
    out
}

/// `V_k = {p ∈ S^k T : ∂_a p ∈ V_{k-1} for all a}`.
pub fn prolong(prev: &Subspace, n: usize, k: usize) -> Subspace {
    let lower = TensorIndex::symmetric(n, k - 1);
    let upper = TensorIndex::symmetric(n, k);
    let ndim_lower = lower.dim();
    // Reduction of each degree-(k-1) monomial modulo V_{k-1}: e_m minus
    // the RREF row with pivot m, if any. Only non-pivot coordinates remain.
    let mut pivot_row = vec![usize::MAX; ndim_lower];
    for (r, b) in prev.basis().iter().enumerate() {
        pivot_row[b.leading().unwrap().0] = r;
    }
    let reduced: Vec<SparseVec> = (0..ndim_lower)
        .map(|m| match pivot_row[m] {
            usize::MAX => SparseVec::unit(m),
            r => SparseVec::from_sorted(
                prev.basis()[r]
                    .iter()
                    .skip(1)
                    .map(|(i, x)| (i, -x))
                    .collect(),
            ),
        })
        .collect();
    // Constraint rows indexed by (a, non-pivot m): collect as columns of the
    // constraint matrix, one per degree-k monomial, then transpose.
    let cols: Vec<Vec<(usize, Rational)>> = (0..upper.dim())
        .into_par_iter()
        .map(|c| {
            let t = upper.unrank(c);
            let mut entries = Vec::new();
            for (a, m, mult) in monomial_derivatives(&t, &lower) {
                let coef = Rational::from_int(mult);
                for (i, x) in reduced[m].iter() {
                    entries.push((a * ndim_lower + i, &coef * x));
                }
            }
            entries
        })
        .collect();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n * ndim_lower];
    for (c, entries) in cols.into_iter().enumerate() {
        for (r, x) in entries {
            rows[r].push((c, x));
        }
    }
    let rows: Vec<SparseVec> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(SparseVec::from_pairs)
        .collect();
    kernel_of_rows(upper.dim(), rows.iter())
}

/// The ladder of `T`: `V_0 = C`, `V_1 = T`, `V_2` the degree-2 ideal of the
/// closed orbit in `P(T*)`, then prolongations until the first zero piece.
pub fn prolong_ladder(t: &Representation) -> Result<IdealLadder, MinusculeError> {
    prolong_ladder_capped(t, PROLONGATION_MONOMIAL_CAP)
}

/// [`prolong_ladder`] refusing any step with more than `cap` monomials.
pub fn prolong_ladder_capped(
    t: &Representation,
    cap: usize,
) -> Result<IdealLadder, MinusculeError> {
    let n = t.module_dim();
    let mut pieces = vec![Subspace::full(1), Subspace::full(n)];
    let v2 = cartan_complement_ideal(&t.dual()?)?;
    if v2.is_zero() {
        return Ok(IdealLadder {
            base_dim: n,
            pieces,
        });
    }
    pieces.push(v2);
    loop {
        let k = pieces.len();
        if k >= PROLONGATION_GUARD {
            return Err(MinusculeError::ProlongationRunaway(k));
        }
        let monomials = crate::exactlin::binomial(n + k - 1, k);
        if monomials > cap {
            return Err(MinusculeError::ProlongationTooLarge {
                degree: k,
                monomials,
            });
        }
        let next = prolong(pieces.last().unwrap(), n, k);
        if next.is_zero() {
            break;
        }
        pieces.push(next);
    }
    Ok(IdealLadder {
        base_dim: n,
        pieces,
    })
}
