use serde::{Deserialize, Serialize};

use super::{Accumulator, Rational, SparseVec};

/// Exact rational matrix stored as sparse columns.
///
/// Column `j` holds the image of the `j`-th basis vector, so `apply` is a
/// linear combination of columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        RationalMatrix {
            rows: n,
            cols: n,
            columns: (0..n)
                .map(|i| {
                    if c.is_zero() {
                        SparseVec::new()
                    } else {
                        SparseVec::from_sorted(vec![(i, c.clone())])
                    }
                })
                .collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.max_index().is_none_or(|m| m < rows)));
        RationalMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Row-major dense constructor, handy in tests.
    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut cols = vec![Vec::new(); c];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        RationalMatrix {
            rows: r,
            cols: c,
            columns: cols.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds from `(row, col, value)` triples, summing duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut per_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cols];
        for (i, j, x) in triplets {
            assert!(i < rows && j < cols, "triplet out of range");
            per_col[j].push((i, x));
        }
        RationalMatrix {
            rows,
            cols,
            columns: per_col.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                out[i][j] = x.clone();
            }
        }
        out
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, x)| (i, j, x)))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.rows);
        self.apply_into(v, &mut acc);
        acc.take()
    }

    /// Adds `self * v` into an accumulator.
    pub fn apply_into(&self, v: &SparseVec, acc: &mut Accumulator) {
        for (j, x) in v.iter() {
            acc.add_scaled(x, &self.columns[j]);
        }
    }

    pub fn apply_dense(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, x) in c.iter() {
                out[i] += &(x * &v[j]);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut acc = Accumulator::new(self.rows);
        let columns = rhs
            .columns
            .iter()
            .map(|c| {
                self.apply_into(c, &mut acc);
                acc.take()
            })
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                per_row[i].push((j, x.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: per_row.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// Rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        self.transpose().columns
    }

    pub fn add_scaled(&self, c: &Rational, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix sum dimension mismatch"
        );
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add_scaled(c, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.add_scaled(&-Rational::one(), other)
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &RationalMatrix) -> RationalMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Returns `Some(c)` iff the matrix equals `c * Id`. Zero-size matrices
    /// report `Some(0)`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if !self.is_square() {
            return None;
        }
        let c = if self.cols == 0 {
            Rational::zero()
        } else {
            self.get(0, 0)
        };
        for (j, col) in self.columns.iter().enumerate() {
            match col.entries() {
                [] if c.is_zero() => {}
                [(i, x)] if *i == j && *x == c => {}
                _ => return None,
            }
        }
        Some(c)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.columns[i].get(i))
            .sum()
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_product(&self, other: &RationalMatrix) -> Rational {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Rational::zero();
        for (k, col) in other.columns.iter().enumerate() {
            // (self*other)_{kk} = sum_l self_{kl} other_{lk}
            for (l, y) in col.iter() {
                if let Some(x) = self.columns[l].get_ref(k) {
                    acc += &(x * y);
                }
            }
        }
        acc
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().map(|c| c.shifted(self.rows)));
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    /// Kronecker product; the left factor's index is the more significant.
    pub fn kron(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((i * other.rows + k, x * y));
                    }
                }
                columns.push(SparseVec::from_sorted(entries));
            }
        }
        RationalMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            columns,
        }
    }

    /// Submatrix picking the given rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&j| {
                SparseVec::from_pairs(
                    self.columns[j]
                        .iter()
                        .filter(|(i, _)| pos[*i] != usize::MAX)
                        .map(|(i, x)| (pos[i], x.clone())),
                )
            })
            .collect();
        RationalMatrix {
            rows: rows.len(),
            cols: cols.len(),
            columns,
        }
    }
}
