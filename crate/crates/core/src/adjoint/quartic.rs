use std::collections::HashMap;

use rayon::prelude::*;

use super::{AdjointError, AdjointFrame};
use crate::exactlin::{
    symmetric_derivative, Accumulator, Rational, RationalMatrix, SparseVec, Subspace, TensorIndex,
};
use crate::repcore::{block_forms, cartan_complement_ideal};

/// The quartic invariant `p` of `T₁` with its derivatives.
#[derive(Clone, Debug)]
pub struct Quartic {
    pub n: usize,
    /// Monomial coefficients of `p(w) = ω*(θ(w*⊗w)w, w)` in `S⁴`.
    pub p: SparseVec,
    /// `r` with `B_h(θ(w*⊗w), θ(w*⊗w)) = r·p(w)`; `None` when `p ≡ 0`.
    pub factor: Option<Rational>,
    /// Span of the partial derivatives of `p` in `S³`.
    pub cubics: Subspace,
}

impl Quartic {
    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn eval(&self, w: &[Rational]) -> Rational {
        eval_poly(&self.p, &TensorIndex::symmetric(self.n, 4), w)
    }
}

/// Value of a polynomial given by monomial coefficients.
pub fn eval_poly(p: &SparseVec, idx: &TensorIndex, w: &[Rational]) -> Rational {
    p.iter()
        .map(|(r, c)| idx.unrank(r).iter().fold(c.clone(), |acc, &a| &acc * &w[a]))
        .sum()
}

/// `S_ab = θ(e_a* ⊗ e_b)` with the solved coefficients, for all `a, b`.
pub fn theta_flat_all(frame: &AdjointFrame) -> Vec<SparseVec> {
    let n = frame.n();
    let rows = frame.omega.row_vectors();
    (0..n * n)
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            let mut out = SparseVec::new();
            for (d, x) in rows[a].iter() {
                out = out.add_scaled(x, &frame.theta_combined(d, b));
            }
            out
        })
        .collect()
}

/// The invariant form `⊕ B_k / c_k` dual to the combined θ.
fn theta_form(frame: &AdjointFrame) -> RationalMatrix {
    let alg = frame.t1.algebra();
    let mut trip = Vec::new();
    for ((idx, form), c) in block_forms(alg).into_iter().zip(&frame.coefficients) {
        for (a, b, x) in form.triplets() {
            trip.push((idx[a], idx[b], x / c));
        }
    }
    RationalMatrix::from_triplets(alg.dim(), alg.dim(), trip)
}

fn add_monomial(
    acc: &mut HashMap<usize, Rational>,
    idx: &TensorIndex,
    mut t: [usize; 4],
    x: Rational,
) {
    t.sort_unstable();
    let r = idx.rank(&t);
    *acc.entry(r).or_insert_with(Rational::zero) += &x;
}

fn to_sparse(acc: HashMap<usize, Rational>) -> SparseVec {
    SparseVec::from_pairs(acc.into_iter().filter(|(_, x)| !x.is_zero()))
}

/// Computes `p` as `ω*(θ(w*⊗w)w, w)` and as `B_h(θ(w*⊗w), θ(w*⊗w))`, checks
/// they agree up to one factor, and collects the derivative cubics.
pub fn quartic_invariant(frame: &AdjointFrame) -> Result<Quartic, AdjointError> {
    let n = frame.n();
    let idx4 = TensorIndex::symmetric(n, 4);
    let s = theta_flat_all(frame);
    let beta = frame.beta();
    let beta_rows = beta.row_vectors();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !s[a * n + b].is_zero())
        .collect();
    let merge = |mut x: HashMap<usize, Rational>, y: HashMap<usize, Rational>| {
        for (k, v) in y {
            *x.entry(k).or_insert_with(Rational::zero) += &v;
        }
        x
    };
    // Σ w_a w_b w_c w_d β(ρ(S_ab) e_c, e_d)
    let by_omega = pairs
        .par_iter()
        .fold(HashMap::new, |mut acc, &(a, b)| {
            let m = frame.t1.rho_of(&s[a * n + b]);
            for c in 0..n {
                let mut row = Accumulator::new(n);
                for (i, x) in m.column(c).iter() {
                    row.add_scaled(x, &beta_rows[i]);
                }
                for (d, y) in row.take().iter() {
                    add_monomial(&mut acc, &idx4, [a, b, c, d], y.clone());
                }
            }
            acc
        })
        .reduce(HashMap::new, merge);
    let p = to_sparse(by_omega);
    // Σ w_a w_b w_c w_d F(S_ab, S_cd)
    let form = theta_form(frame);
    let mut by_coord: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for &(c, d) in &pairs {
        for (j, x) in s[c * n + d].iter() {
            by_coord.entry(j).or_default().push((c * n + d, x.clone()));
        }
    }
    let by_form = pairs
        .par_iter()
        .fold(HashMap::new, |mut acc, &(a, b)| {
            let g = form.apply(&s[a * n + b]);
            let mut dots: HashMap<usize, Rational> = HashMap::new();
            for (j, x) in g.iter() {
                if let Some(list) = by_coord.get(&j) {
                    for (cd, y) in list {
                        *dots.entry(*cd).or_insert_with(Rational::zero) += &(x * y);
                    }
                }
            }
            for (cd, v) in dots {
                if !v.is_zero() {
                    add_monomial(&mut acc, &idx4, [a, b, cd / n, cd % n], v);
                }
            }
            acc
        })
        .reduce(HashMap::new, merge);
    let q = to_sparse(by_form);
    let factor = match (p.leading(), q.leading()) {
        (None, None) => None,
        (Some((i, x)), Some((j, y))) if i == j => {
            let r = y / x;
            if p.scale(&r) != q {
                return Err(AdjointError::QuarticMismatch);
            }
            Some(r)
        }
        _ => return Err(AdjointError::QuarticMismatch),
    };
    let idx3 = TensorIndex::symmetric(n, 3);
    let derivs: Vec<SparseVec> = (0..n)
        .map(|a| symmetric_derivative(&p, a, &idx4, &idx3))
        .collect();
    let cubics = Subspace::from_vectors(idx3.dim(), derivs.iter());
    Ok(Quartic {
        n,
        p,
        factor,
        cubics,
    })
}

/// The quadrics `w ↦ θ(w*⊗w)_j`, one per coordinate of `h`.
pub fn theta_quadrics(frame: &AdjointFrame) -> Subspace {
    let n = frame.n();
    let idx = TensorIndex::symmetric(n, 2);
    let s = theta_flat_all(frame);
    let m = frame.t1.algebra().dim();
    let mut per: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
    for a in 0..n {
        for b in a..n {
            let v = if a == b {
                s[a * n + a].clone()
            } else {
                s[a * n + b].add(&s[b * n + a])
            };
            for (j, x) in v.iter() {
                per[j].push((idx.rank(&[a, b]), x.clone()));
            }
        }
    }
    let qs: Vec<SparseVec> = per.into_iter().map(SparseVec::from_pairs).collect();
    Subspace::from_vectors(idx.dim(), qs.iter())
}

/// The quadrics `w ↦ ω*(w, Zw)` for `Z` running over a basis of `h`.
pub fn moment_quadrics(frame: &AdjointFrame) -> Subspace {
    let n = frame.n();
    let idx = TensorIndex::symmetric(n, 2);
    let beta = frame.beta();
    let qs: Vec<SparseVec> = frame
        .t1
        .action()
        .par_iter()
        .map(|z| {
            let m = beta.mul(z);
            SparseVec::from_pairs(
                m.triplets()
                    .map(|(a, b, x)| (idx.rank(&[a.min(b), a.max(b)]), x.clone())),
            )
        })
        .collect();
    Subspace::from_vectors(idx.dim(), qs.iter())
}

/// Base-locus checks: both quadric families span the degree-2 ideal of the
/// closed orbit, whose dimension is `dim h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseLocusReport {
    pub ideal_dim: usize,
    pub h_dim: usize,
    pub theta_matches: bool,
    pub moment_matches: bool,
}

impl BaseLocusReport {
    pub fn passed(&self) -> bool {
        self.theta_matches && self.moment_matches && self.ideal_dim == self.h_dim
    }
}

pub fn base_locus_report(frame: &AdjointFrame) -> Result<BaseLocusReport, AdjointError> {
    let ideal = cartan_complement_ideal(&frame.t1)?;
    Ok(BaseLocusReport {
        ideal_dim: ideal.dim(),
        h_dim: frame.t1.algebra().dim(),
        theta_matches: theta_quadrics(frame) == ideal,
        moment_matches: moment_quadrics(frame) == ideal,
    })
}
