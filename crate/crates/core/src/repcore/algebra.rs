use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactlin::{span_closure, Accumulator, Rational, RationalMatrix, SparseVec};

/// A block of the ideal partition: a set of basis indices spanning an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealBlock {
    pub indices: Vec<usize>,
    pub abelian: bool,
}

/// A Lie algebra given by structure constants on a fixed basis.
///
/// `ad[i]` is the matrix of `ad x_i`, so column `j` of `ad[i]` is
/// `[x_i, x_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    ad: Vec<RationalMatrix>,
    killing: RationalMatrix,
    ideals: Vec<IdealBlock>,
    label: String,
}

/// Outcome of a Jacobi sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiCertificate {
    pub dim: usize,
    pub exhaustive: bool,
    pub triples_checked: u64,
    /// First offending basis triple, if any.
    pub violation: Option<(usize, usize, usize)>,
}

impl JacobiCertificate {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Full,
    Sampled { triples: u64, seed: u64 },
}

impl LieAlgebra {
    /// Builds from adjoint matrices; the Killing form and ideal partition
    /// are computed.
    pub fn from_ad(ad: Vec<RationalMatrix>, label: impl Into<String>) -> Self {
        let killing = killing_from_ad(&ad);
        let ideals = basis_ideal_partition(&ad);
        LieAlgebra {
            ad,
            killing,
            ideals,
            label: label.into(),
        }
    }

    /// Builds from the brackets `[x_i, x_j]` for `i < j`; missing pairs are
    /// zero.
    pub fn from_brackets(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec)>,
        label: impl Into<String>,
    ) -> Self {
        let mut cols: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); dim]; dim];
        for (i, j, v) in brackets {
            assert!(i < dim && j < dim && i != j, "bracket index out of range");
            cols[j][i] = v.neg();
            cols[i][j] = v;
        }
        let ad = cols
            .into_iter()
            .map(|c| RationalMatrix::from_columns(dim, c))
            .collect();
        Self::from_ad(ad, label)
    }

    pub fn zero() -> Self {
        Self::from_ad(Vec::new(), "0")
    }

    pub fn abelian(dim: usize, label: impl Into<String>) -> Self {
        Self::from_ad(vec![RationalMatrix::zeros(dim, dim); dim], label)
    }

    /// `sl2` on the basis `(E, H, F)`.
    pub fn sl2() -> Self {
        let r = Rational::from_int;
        Self::from_brackets(
            3,
            [
                (0, 1, SparseVec::from_pairs([(0, r(-2))])),
                (0, 2, SparseVec::unit(1)),
                (1, 2, SparseVec::from_pairs([(2, r(-2))])),
            ],
            "sl2",
        )
    }

    pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra, label: impl Into<String>) -> Self {
        let (n, m) = (a.dim(), b.dim());
        let mut ad = Vec::with_capacity(n + m);
        for x in &a.ad {
            ad.push(x.direct_sum(&RationalMatrix::zeros(m, m)));
        }
        for y in &b.ad {
            ad.push(RationalMatrix::zeros(n, n).direct_sum(y));
        }
        let killing = a.killing.direct_sum(&b.killing);
        let mut ideals = a.ideals.clone();
        ideals.extend(b.ideals.iter().map(|blk| IdealBlock {
            indices: blk.indices.iter().map(|i| i + n).collect(),
            abelian: blk.abelian,
        }));
        LieAlgebra {
            ad,
            killing,
            ideals,
            label: label.into(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.ad.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn ad(&self, i: usize) -> &RationalMatrix {
        &self.ad[i]
    }

    pub fn ad_matrices(&self) -> &[RationalMatrix] {
        &self.ad
    }

    /// `[x_i, x_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        self.ad[i].column(j)
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_scaled(&(a * b), self.ad[i].column(j));
            }
        }
        acc.take()
    }

    pub fn ad_of(&self, x: &SparseVec) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.dim(), self.dim());
        for (i, a) in x.iter() {
            m = m.add_scaled(a, &self.ad[i]);
        }
        m
    }

    pub fn killing(&self) -> &RationalMatrix {
        &self.killing
    }

    pub fn ideals(&self) -> &[IdealBlock] {
        &self.ideals
    }

    /// Basis indices of the non-abelian ideals.
    pub fn semisimple_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .ideals
            .iter()
            .filter(|b| !b.abelian)
            .flat_map(|b| b.indices.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn structure_triplets(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.ad.iter().enumerate().flat_map(|(i, m)| {
            m.columns()
                .iter()
                .enumerate()
                .filter(move |(j, _)| i < *j)
                .flat_map(move |(j, c)| c.iter().map(move |(k, x)| (i, j, k, x)))
        })
    }

    /// Jacobiator of a basis triple.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        self.ad[i].apply_into(self.ad[j].column(k), &mut acc);
        self.ad[j].apply_into(self.ad[k].column(i), &mut acc);
        self.ad[k].apply_into(self.ad[i].column(j), &mut acc);
        acc.take()
    }

    pub fn verify_jacobi(&self, mode: JacobiMode) -> JacobiCertificate {
        let n = self.dim();
        match mode {
            JacobiMode::Full => {
                let violation = (0..n).into_par_iter().find_map_first(|i| {
                    let mut acc = Accumulator::new(n);
                    for j in i + 1..n {
                        for k in j + 1..n {
                            self.ad[i].apply_into(self.ad[j].column(k), &mut acc);
                            self.ad[j].apply_into(self.ad[k].column(i), &mut acc);
                            self.ad[k].apply_into(self.ad[i].column(j), &mut acc);
                            if !acc.take().is_zero() {
                                return Some((i, j, k));
                            }
                        }
                    }
                    None
                });
                let triples = if n < 3 {
                    0
                } else {
                    (n as u64) * (n as u64 - 1) * (n as u64 - 2) / 6
                };
                JacobiCertificate {
                    dim: n,
                    exhaustive: true,
                    triples_checked: triples,
                    violation,
                }
            }
            JacobiMode::Sampled { triples, seed } => {
                if n < 3 {
                    return JacobiCertificate {
                        dim: n,
                        exhaustive: true,
                        triples_checked: 0,
                        violation: None,
                    };
                }
                let chunks = 64u64;
                let per = triples.div_ceil(chunks);
                let violation = (0..chunks).into_par_iter().find_map_first(|c| {
                    let mut rng = crate::seeded_rng(seed ^ c.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                    let mut done = 0;
                    while done < per {
                        let i = rng.gen_range(0..n);
                        let j = rng.gen_range(0..n);
                        let k = rng.gen_range(0..n);
                        if i == j || j == k || i == k {
                            continue;
                        }
                        done += 1;
                        if !self.jacobiator(i, j, k).is_zero() {
                            return Some((i, j, k));
                        }
                    }
                    None
                });
                JacobiCertificate {
                    dim: n,
                    exhaustive: false,
                    triples_checked: per * chunks,
                    violation,
                }
            }
        }
    }

    /// `B([x_i,x_j],x_k) + B(x_j,[x_i,x_k]) = 0` on all basis triples.
    pub fn killing_is_invariant(&self) -> bool {
        let n = self.dim();
        let b = &self.killing;
        (0..n).into_par_iter().all(|i| {
            // ad_i^T B + B ad_i = 0
            self.ad[i]
                .transpose()
                .mul(b)
                .add(&b.mul(&self.ad[i]))
                .is_zero()
        })
    }

    /// Span of the ad-orbit of `x`: the ideal generated by `x`.
    pub fn ideal_generated(&self, x: &SparseVec) -> usize {
        span_closure(&self.ad, std::slice::from_ref(x), self.dim())
            .map(|s| s.dim())
            .unwrap_or(0)
    }

    /// Randomized simplicity check: the ideals generated by `trials` random
    /// basis vectors must all be the whole algebra.
    pub fn is_simple_by_closure(&self, trials: usize, seed: u64) -> bool {
        let n = self.dim();
        if n == 0 || self.ad.iter().all(|m| m.is_zero()) {
            return false;
        }
        let mut rng = crate::seeded_rng(seed);
        (0..trials).all(|_| self.ideal_generated(&SparseVec::unit(rng.gen_range(0..n))) == n)
    }
}

fn killing_from_ad(ad: &[RationalMatrix]) -> RationalMatrix {
    let n = ad.len();
    let rows: Vec<Vec<(usize, usize, Rational)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .filter_map(|j| {
                    let x = ad[i].trace_product(&ad[j]);
                    (!x.is_zero()).then_some((i, j, x))
                })
                .collect()
        })
        .collect();
    let mut trip = Vec::new();
    for (i, j, x) in rows.into_iter().flatten() {
        if i != j {
            trip.push((j, i, x.clone()));
        }
        trip.push((i, j, x));
    }
    RationalMatrix::from_triplets(n, n, trip)
}

/// Connected components of the graph joining `i` and `j` whenever
/// `[x_i, x_j] != 0` or `x_k` occurs in `[x_i, x_j]`. For bases adapted to
/// a direct sum decomposition, these are the summands; singleton central
/// elements are abelian blocks.
fn basis_ideal_partition(ad: &[RationalMatrix]) -> Vec<IdealBlock> {
    let n = ad.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for (i, m) in ad.iter().enumerate() {
        for (j, c) in m.columns().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ri = find(&mut parent, i);
            let rj = find(&mut parent, j);
            parent[ri] = rj;
            for (k, _) in c.iter() {
                let rk = find(&mut parent, k);
                let rj = find(&mut parent, j);
                parent[rk] = rj;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_block = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_block[r]].push(i);
    }
    blocks
        .into_iter()
        .map(|indices| {
            let abelian = indices
                .iter()
                .all(|&i| indices.iter().all(|&j| ad[i].column(j).is_zero()));
            IdealBlock { indices, abelian }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_killing() {
        let g = LieAlgebra::sl2();
        let r = Rational::from_int;
        assert_eq!(g.killing().get(1, 1), r(8));
        assert_eq!(g.killing().get(0, 2), r(4));
        assert_eq!(g.killing().get(2, 0), r(4));
        assert_eq!(g.killing().nnz(), 3);
        assert!(g.verify_jacobi(JacobiMode::Full).passed());
        assert!(g.killing_is_invariant());
        assert!(g.is_simple_by_closure(10, 1));
        assert_eq!(g.ideals().len(), 1);
    }

    #[test]
    fn abelian_and_sums() {
        let a = LieAlgebra::abelian(1, "c");
        assert!(a.killing().is_zero());
        assert!(a.ideals()[0].abelian);
        let s = LieAlgebra::direct_sum(&LieAlgebra::sl2(), &LieAlgebra::sl2(), "sl2+sl2");
        assert_eq!(
            s.killing(),
            &LieAlgebra::sl2()
                .killing()
                .direct_sum(LieAlgebra::sl2().killing())
        );
        assert_eq!(s.ideals().len(), 2);
        assert!(!s.is_simple_by_closure(3, 2));
        assert_eq!(
            LieAlgebra::from_ad(s.ad_matrices().to_vec(), "x").ideals(),
            s.ideals()
        );
    }

    #[test]
    fn jacobi_detects_corruption() {
        let r = Rational::from_int;
        // [E,H] perturbed: not a Lie algebra
        let bad = LieAlgebra::from_brackets(
            3,
            [
                (0, 1, SparseVec::from_pairs([(0, r(-3))])),
                (0, 2, SparseVec::unit(1)),
                (1, 2, SparseVec::from_pairs([(2, r(-2))])),
            ],
            "bad",
        );
        let cert = bad.verify_jacobi(JacobiMode::Full);
        assert_eq!(cert.violation, Some((0, 1, 2)));
    }
}
