use serde::{Deserialize, Serialize};

use super::Rational;

/// A sparse rational vector: strictly increasing indices, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rational::one())],
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, Rational)> = pairs.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += &x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    /// Builds from entries already sorted by strictly increasing index.
    pub fn from_sorted(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        let mut entries = entries;
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    #[inline]
    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn get_ref(&self, i: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&-Rational::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Dot product against a dense vector.
    pub fn dot_dense(&self, dense: &[Rational]) -> Rational {
        self.entries.iter().map(|(i, x)| x * &dense[*i]).sum()
    }

    /// Reindexes entries through `f`, which must be injective.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, x)| (f(*i), x.clone())))
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (i + offset, x.clone()))
                .collect(),
        }
    }
}

/// Accumulates a sparse linear combination in a dense scratch buffer.
///
/// Reusable across many sums of the same ambient dimension; `take` drains the
/// buffer back to all-zero.
pub struct Accumulator {
    values: Vec<Rational>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator {
            values: vec![Rational::zero(); dim],
            touched: Vec::new(),
            mark: vec![false; dim],
        }
    }

    #[inline]
    pub fn add(&mut self, i: usize, x: &Rational) {
        if x.is_zero() {
            return;
        }
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
            self.values[i] = x.clone();
        } else {
            self.values[i] += x;
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            for (i, x) in v.iter() {
                self.add(i, x);
            }
        } else {
            for (i, x) in v.iter() {
                self.add(i, &(c * x));
            }
        }
    }

    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let x = std::mem::take(&mut self.values[i]);
            if !x.is_zero() {
                out.push((i, x));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted(out)
    }
}
