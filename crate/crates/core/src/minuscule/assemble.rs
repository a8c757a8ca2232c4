use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::ThetaMap;
use crate::exactlin::{Rational, SparseVec};
use crate::repcore::{LieAlgebra, Representation};

/// Index ranges of the three-step grading `T* ⊕ (h ⊕ C) ⊕ T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeGrading {
    pub minus: Range<usize>,
    pub h: Range<usize>,
    pub center: usize,
    pub plus: Range<usize>,
}

impl ThreeGrading {
    pub fn new(n: usize, m: usize) -> Self {
        ThreeGrading {
            minus: 0..n,
            h: n..n + m,
            center: n + m,
            plus: n + m + 1..2 * n + m + 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.plus.end
    }

    /// Degree of a basis index: -1, 0 or 1.
    pub fn degree(&self, i: usize) -> i32 {
        if self.minus.contains(&i) {
            -1
        } else if self.plus.contains(&i) {
            1
        } else {
            0
        }
    }
}

/// Structure constants on the basis `(T*, h, 1, T)`: the center acts by `+1`
/// on `T` and `-1` on `T*`, and `[e_a*, e_b] = δ_ab·1 + s·θ(e_a*⊗e_b)`.
pub fn assemble_algebra(
    t: &Representation,
    th: &ThetaMap,
    label: &str,
) -> (LieAlgebra, ThreeGrading) {
    let h = t.algebra();
    let n = t.module_dim();
    let m = h.dim();
    let gr = ThreeGrading::new(n, m);
    let (hs, z, ps) = (gr.h.start, gr.center, gr.plus.start);
    let one = Rational::one();
    let mut brackets: Vec<(usize, usize, SparseVec)> = Vec::new();
    // [T*, h] and [h, h]
    for i in 0..m {
        let rho = t.rho(i);
        for (j, x) in h.ad_matrices()[i].columns().iter().enumerate() {
            if i < j && !x.is_zero() {
                brackets.push((hs + i, hs + j, x.shifted(hs)));
            }
        }
        // [x_i, e_b] = Σ_c ρ_{cb} e_c
        for b in 0..n {
            let col = rho.column(b);
            if !col.is_zero() {
                brackets.push((hs + i, ps + b, col.shifted(ps)));
            }
        }
        // [e_a*, x_i] = -[x_i, e_a*] = Σ_c ρ_{ac} e_c*
        let rows = rho.row_vectors();
        for (a, row) in rows.iter().enumerate() {
            if !row.is_zero() {
                brackets.push((a, hs + i, row.clone()));
            }
        }
    }
    for a in 0..n {
        // [e_a*, 1] = e_a*
        brackets.push((a, z, SparseVec::unit(a)));
        // [1, e_b] = e_b
        brackets.push((z, ps + a, SparseVec::unit(ps + a)));
        for b in 0..n {
            let mut v = th.get(a, b).scale(&th.scale).shifted(hs);
            if a == b {
                v = v.add_scaled(&one, &SparseVec::unit(z));
            }
            if !v.is_zero() {
                brackets.push((a, ps + b, v));
            }
        }
    }
    (LieAlgebra::from_brackets(gr.dim(), brackets, label), gr)
}

/// Whether every bracket respects the grading.
pub fn respects_grading(g: &LieAlgebra, gr: &ThreeGrading) -> bool {
    g.structure_triplets()
        .all(|(i, j, k, _)| gr.degree(i) + gr.degree(j) == gr.degree(k))
}
