use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::{Accumulator, ExactLinError, Rational, RationalMatrix, SparseVec};

/// Incremental row-echelon builder.
///
/// Rows are kept in (non-reduced) echelon form with unit pivots; every
/// inserted vector is first reduced against all existing pivots, so the
/// builder also answers membership queries. `finish` back-substitutes to
/// reduced echelon form.
pub struct EchelonBuilder {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    scratch: Vec<Rational>,
    mark: Vec<bool>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder {
            ambient,
            rows: Vec::new(),
            pivot_row: vec![None; ambient],
            scratch: vec![Rational::zero(); ambient],
            mark: vec![false; ambient],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row[i].is_some()
    }

    /// Reduces `v` against the current pivots; the result vanishes at every
    /// pivot position.
    pub fn reduce(&mut self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::with_capacity(v.nnz() * 2);
        let mut touched: Vec<usize> = Vec::with_capacity(v.nnz() * 2);
        for (i, x) in v.iter() {
            self.scratch[i] = x.clone();
            self.mark[i] = true;
            touched.push(i);
            if self.pivot_row[i].is_some() {
                heap.push(Reverse(i));
            }
        }
        while let Some(Reverse(p)) = heap.pop() {
            let c = std::mem::take(&mut self.scratch[p]);
            if c.is_zero() {
                continue;
            }
            let r = self.pivot_row[p].expect("heap holds pivot positions only");
            let row = &self.rows[r];
            for (i, x) in row.iter().skip(1) {
                let delta = &c * x;
                if !self.mark[i] {
                    self.mark[i] = true;
                    touched.push(i);
                    self.scratch[i] = -delta;
                    if self.pivot_row[i].is_some() {
                        heap.push(Reverse(i));
                    }
                } else {
                    let was_zero = self.scratch[i].is_zero();
                    self.scratch[i] -= &delta;
                    if was_zero && self.pivot_row[i].is_some() {
                        heap.push(Reverse(i));
                    }
                }
            }
        }
        touched.sort_unstable();
        let mut out = Vec::new();
        for i in touched {
            self.mark[i] = false;
            let x = std::mem::take(&mut self.scratch[i]);
            if !x.is_zero() {
                out.push((i, x));
            }
        }
        SparseVec::from_sorted(out)
    }

    /// Inserts `v`; returns the reduced remainder if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let rem = self.reduce(v);
        let (p, lead) = rem.leading()?;
        let inv = lead.recip();
        let row = rem.scale(&inv);
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(row);
        Some(rem)
    }

    pub fn contains(&mut self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Reduced row-echelon basis sorted by pivot.
    pub fn finish(self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].leading().map(|(p, _)| p));
        let pivots: Vec<usize> = order
            .iter()
            .map(|&r| self.rows[r].leading().unwrap().0)
            .collect();
        let mut pos = vec![usize::MAX; self.ambient];
        for (k, &p) in pivots.iter().enumerate() {
            pos[p] = k;
        }
        let mut reduced: Vec<SparseVec> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let mut acc = Accumulator::new(self.ambient);
        for k in (0..reduced.len()).rev() {
            let needs = reduced[k].iter().skip(1).any(|(i, _)| pos[i] != usize::MAX);
            if !needs {
                continue;
            }
            acc.add_scaled(&Rational::one(), &reduced[k]);
            for (i, x) in reduced[k].iter().skip(1) {
                if pos[i] != usize::MAX {
                    acc.add_scaled(&-x, &reduced[pos[i]]);
                }
            }
            reduced[k] = acc.take();
        }
        reduced
    }
}

/// A linear subspace of `Q^ambient` held in reduced row-echelon form, so
/// that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_vectors<'a>(
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Self {
        let mut b = EchelonBuilder::new(ambient);
        for v in vectors {
            debug_assert!(v.max_index().is_none_or(|m| m < ambient));
            b.insert(v);
        }
        Subspace {
            ambient,
            basis: b.finish(),
        }
    }

    pub fn from_builder(builder: EchelonBuilder) -> Self {
        let ambient = builder.ambient();
        Subspace {
            ambient,
            basis: builder.finish(),
        }
    }

    /// Trusts the caller that `basis` is already in reduced echelon form.
    pub fn from_rref_unchecked(ambient: usize, basis: Vec<SparseVec>) -> Self {
        Subspace { ambient, basis }
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.leading().unwrap().0).collect()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.ambient);
        acc.add_scaled(&Rational::one(), v);
        for (k, b) in self.basis.iter().enumerate() {
            let _ = k;
            let p = b.leading().unwrap().0;
            let c = v.get(p);
            if !c.is_zero() {
                acc.add_scaled(&-c, b);
            }
        }
        acc.take()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        if !self.reduce(v).is_zero() {
            return None;
        }
        Some(
            self.basis
                .iter()
                .map(|b| v.get(b.leading().unwrap().0))
                .collect(),
        )
    }

    /// Sparse coordinates, assuming (unchecked) that `v` lies in the span.
    /// Pivot lookup only; use [`Subspace::coordinates`] when membership is
    /// in doubt.
    pub fn coordinates_unchecked(&self, v: &SparseVec, pivot_pos: &[usize]) -> SparseVec {
        SparseVec::from_pairs(
            v.iter()
                .filter(|(i, _)| pivot_pos[*i] != usize::MAX)
                .map(|(i, x)| (pivot_pos[i], x.clone())),
        )
    }

    /// Map from ambient index to basis position (`usize::MAX` when the index
    /// is not a pivot).
    pub fn pivot_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.ambient];
        for (k, b) in self.basis.iter().enumerate() {
            pos[b.leading().unwrap().0] = k;
        }
        pos
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_vectors(self.ambient, self.basis.iter().chain(other.basis.iter()))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        annihilator(&annihilator(self).sum(&annihilator(other)))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient, self.basis.clone())
    }
}

/// Right null space of `m` in canonical echelon form.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    kernel_of_rows(m.cols(), m.row_vectors().iter())
}

/// Null space of the linear system whose equations are the given rows.
pub fn kernel_of_rows<'a>(
    ambient: usize,
    rows: impl IntoIterator<Item = &'a SparseVec>,
) -> Subspace {
    let mut b = EchelonBuilder::new(ambient);
    for r in rows {
        b.insert(r);
        if b.rank() == ambient {
            break;
        }
    }
    let rref = b.finish();
    null_space_from_rref(ambient, &rref)
}

fn null_space_from_rref(ambient: usize, rref: &[SparseVec]) -> Subspace {
    let mut is_pivot = vec![false; ambient];
    for r in rref {
        is_pivot[r.leading().unwrap().0] = true;
    }
    let mut free_entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ambient];
    for r in rref {
        let p = r.leading().unwrap().0;
        for (i, x) in r.iter().skip(1) {
            if !is_pivot[i] {
                free_entries[i].push((p, -x));
            }
        }
    }
    let vectors: Vec<SparseVec> = (0..ambient)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut e = std::mem::take(&mut free_entries[f]);
            e.push((f, Rational::one()));
            SparseVec::from_pairs(e)
        })
        .collect();
    Subspace::from_vectors(ambient, vectors.iter())
}

/// Functionals (in dual coordinates) vanishing on `s`.
pub fn annihilator(s: &Subspace) -> Subspace {
    null_space_from_rref(s.ambient(), s.basis())
}

/// Smallest subspace containing `seeds` and invariant under every action
/// matrix.
pub fn span_closure(
    actions: &[RationalMatrix],
    seeds: &[SparseVec],
    ambient: usize,
) -> Result<Subspace, ExactLinError> {
    for a in actions {
        if a.rows() != ambient || a.cols() != ambient {
            return Err(ExactLinError::DimensionMismatch {
                context: "span_closure action",
                expected: ambient,
                found: a.rows().max(a.cols()),
            });
        }
    }
    for s in seeds {
        if let Some(m) = s.max_index() {
            if m >= ambient {
                return Err(ExactLinError::DimensionMismatch {
                    context: "span_closure seed",
                    expected: ambient,
                    found: m + 1,
                });
            }
        }
    }
    let mut b = EchelonBuilder::new(ambient);
    let mut queue: Vec<SparseVec> = Vec::new();
    for s in seeds {
        if let Some(r) = b.insert(s) {
            queue.push(r);
        }
    }
    while let Some(v) = queue.pop() {
        if b.rank() == ambient {
            break;
        }
        for a in actions {
            let w = a.apply(&v);
            if w.is_zero() {
                continue;
            }
            if let Some(r) = b.insert(&w) {
                queue.push(r);
            }
        }
    }
    Ok(Subspace::from_builder(b))
}

/// Expresses vectors in terms of a fixed linearly independent family.
pub struct CoordinateSolver {
    ambient: usize,
    count: usize,
    pivots: Vec<usize>,
    // Row r of the reduced echelon form of [family | identity]: the
    // ambient part has pivot pivots[r], the tag part gives the combination.
    tags: Vec<SparseVec>,
}

impl CoordinateSolver {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(ambient: usize, family: &[SparseVec]) -> Option<Self> {
        let mut b = EchelonBuilder::new(ambient + family.len());
        for (i, v) in family.iter().enumerate() {
            let mut e: Vec<(usize, Rational)> = v.entries().to_vec();
            e.push((ambient + i, Rational::one()));
            b.insert(&SparseVec::from_sorted(e));
        }
        let rows = b.finish();
        let mut pivots = Vec::new();
        let mut tags = Vec::new();
        for r in rows {
            let p = r.leading().unwrap().0;
            if p >= ambient {
                return None;
            }
            pivots.push(p);
            tags.push(SparseVec::from_sorted(
                r.iter()
                    .filter(|(i, _)| *i >= ambient)
                    .map(|(i, x)| (i - ambient, x.clone()))
                    .collect(),
            ));
        }
        Some(CoordinateSolver {
            ambient,
            count: family.len(),
            pivots,
            tags,
        })
    }

    pub fn family_len(&self) -> usize {
        self.count
    }

    /// Coordinates of `x`, assuming it lies in the span (unchecked).
    pub fn coordinates(&self, x: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.count);
        for (r, &p) in self.pivots.iter().enumerate() {
            if let Some(c) = x.get_ref(p) {
                acc.add_scaled(c, &self.tags[r]);
            }
        }
        acc.take()
    }

    /// Coordinates of `x`, or `None` if it is outside the span.
    pub fn coordinates_checked(&self, x: &SparseVec, family: &[SparseVec]) -> Option<SparseVec> {
        let c = self.coordinates(x);
        let mut acc = Accumulator::new(self.ambient);
        for (i, a) in c.iter() {
            acc.add_scaled(a, &family[i]);
        }
        (acc.take() == *x).then_some(c)
    }
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    assert!(m.is_square());
    let n = m.rows();
    // Row-reduce [M | I]; rows of M are columns of M^T.
    let rows = m.row_vectors();
    let mut b = EchelonBuilder::new(2 * n);
    for (i, r) in rows.iter().enumerate() {
        let mut e: Vec<(usize, Rational)> = r.entries().to_vec();
        e.push((n + i, Rational::one()));
        b.insert(&SparseVec::from_sorted(e));
    }
    let rref = b.finish();
    if rref.len() != n
        || rref
            .iter()
            .enumerate()
            .any(|(k, r)| r.leading().unwrap().0 != k)
    {
        return None;
    }
    // Row k of the inverse is the right half of rref row k.
    let inv_rows: Vec<(usize, usize, Rational)> = rref
        .iter()
        .enumerate()
        .flat_map(|(k, r)| {
            r.iter()
                .filter(|(i, _)| *i >= n)
                .map(move |(i, x)| (k, i - n, x.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    Some(RationalMatrix::from_triplets(n, n, inv_rows))
}

/// Solves `m x = rhs`, returning one solution if consistent.
pub fn solve(m: &RationalMatrix, rhs: &SparseVec) -> Option<SparseVec> {
    let n = m.cols();
    let rows = m.row_vectors();
    let mut b = EchelonBuilder::new(n + 1);
    for (i, r) in rows.iter().enumerate() {
        let mut e: Vec<(usize, Rational)> = r.entries().to_vec();
        let c = rhs.get(i);
        if !c.is_zero() {
            e.push((n, c));
        }
        b.insert(&SparseVec::from_sorted(e));
    }
    let rref = b.finish();
    let mut x = Vec::new();
    for r in &rref {
        let p = r.leading().unwrap().0;
        if p == n {
            return None;
        }
        let c = r.get(n);
        if !c.is_zero() {
            x.push((p, c));
        }
    }
    Some(SparseVec::from_pairs(x))
}
