use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::AdjointFrame;
use crate::exactlin::{inverse, Rational, SparseVec};
use crate::repcore::LieAlgebra;

/// Index layout of the five-step grading: `ω*`, the dual basis of `T₁`, `h`,
/// the center `1`, the basis of `T₁`, and `ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveGrading {
    pub low: usize,
    pub minus: Range<usize>,
    pub h: Range<usize>,
    pub center: usize,
    pub plus: Range<usize>,
    pub high: usize,
}

impl FiveGrading {
    pub fn new(n: usize, m: usize) -> Self {
        FiveGrading {
            low: 0,
            minus: 1..n + 1,
            h: n + 1..n + m + 1,
            center: n + m + 1,
            plus: n + m + 2..2 * n + m + 2,
            high: 2 * n + m + 2,
        }
    }

    pub fn dim(&self) -> usize {
        self.high + 1
    }

    pub fn degree(&self, i: usize) -> i32 {
        if i == self.low {
            -2
        } else if self.minus.contains(&i) {
            -1
        } else if self.plus.contains(&i) {
            1
        } else if i == self.high {
            2
        } else {
            0
        }
    }

    /// Dimensions of the pieces of degree −2..=2.
    pub fn dims(&self) -> [usize; 5] {
        [1, self.minus.len(), self.h.len() + 1, self.plus.len(), 1]
    }
}

/// The bracket table with `o = a = m = 2`, `m* = −2` and `p = p* = 2`:
///
/// `[u, v] = 2β(u,v)ω`, `[u*, v*] = 2β(u,v)ω*`, `[u*, ω] = 2u`,
/// `[u, ω*] = −2u*`, `[ω*, ω] = 2·1`, `[u*, v] = β(u,v)·1 + Σ c_k θ_k(u*⊗v)`,
/// and `1` acting by twice the degree.
pub fn assemble_adjoint_algebra(frame: &AdjointFrame, label: &str) -> (LieAlgebra, FiveGrading) {
    let t = &frame.t1;
    let h = t.algebra();
    let n = t.module_dim();
    let m = h.dim();
    let gr = FiveGrading::new(n, m);
    let (lo, ms, hs, z, ps, hi) = (
        gr.low,
        gr.minus.start,
        gr.h.start,
        gr.center,
        gr.plus.start,
        gr.high,
    );
    let two = Rational::from_int(2);
    let four = Rational::from_int(4);
    let beta = frame.beta();
    let w = &frame.omega_star;
    // ε_a = u_a* for u_a = (Ωᵀ)⁻¹ e_a.
    let omega_t_inv = inverse(&frame.omega.transpose()).expect("symplectic form is nondegenerate");
    // β(u_a, e_b) = (W Ωᵀ)_{ab}
    let pair = w.mul(&frame.omega.transpose());
    let mut br: Vec<(usize, usize, SparseVec)> = Vec::new();
    for i in 0..m {
        let rho = t.rho(i);
        for (j, x) in h.ad_matrices()[i].columns().iter().enumerate() {
            if i < j && !x.is_zero() {
                br.push((hs + i, hs + j, x.shifted(hs)));
            }
        }
        for b in 0..n {
            let col = rho.column(b);
            if !col.is_zero() {
                br.push((hs + i, ps + b, col.shifted(ps)));
            }
        }
        for (a, row) in rho.row_vectors().iter().enumerate() {
            if !row.is_zero() {
                br.push((ms + a, hs + i, row.shifted(ms)));
            }
        }
    }
    br.push((lo, z, SparseVec::unit(lo).scale(&four)));
    br.push((z, hi, SparseVec::unit(hi).scale(&four)));
    br.push((lo, hi, SparseVec::unit(z).scale(&two)));
    let omega_rows = frame.omega.row_vectors();
    for a in 0..n {
        br.push((ms + a, z, SparseVec::unit(ms + a).scale(&two)));
        br.push((z, ps + a, SparseVec::unit(ps + a).scale(&two)));
        // [ε_a, ω] = 2 u_a
        br.push((ms + a, hi, omega_t_inv.column(a).scale(&two).shifted(ps)));
        // [ω*, e_a] = −[e_a, ω*] = 2 e_a*
        br.push((lo, ps + a, omega_rows[a].scale(&two).shifted(ms)));
        for b in 0..n {
            if a < b {
                let x = w.get(a, b);
                if !x.is_zero() {
                    br.push((ms + a, ms + b, SparseVec::unit(lo).scale(&(&two * &x))));
                }
                let y = beta.get(a, b);
                if !y.is_zero() {
                    br.push((ps + a, ps + b, SparseVec::unit(hi).scale(&(&two * &y))));
                }
            }
            let mut v = frame.theta_combined(a, b).shifted(hs);
            let c = pair.get(a, b);
            if !c.is_zero() {
                v = v.add_scaled(&c, &SparseVec::unit(z));
            }
            if !v.is_zero() {
                br.push((ms + a, ps + b, v));
            }
        }
    }
    (LieAlgebra::from_brackets(gr.dim(), br, label), gr)
}

pub fn respects_five_grading(g: &LieAlgebra, gr: &FiveGrading) -> bool {
    g.structure_triplets()
        .all(|(i, j, k, _)| gr.degree(i) + gr.degree(j) == gr.degree(k))
}
