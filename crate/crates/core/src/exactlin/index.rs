use serde::{Deserialize, Serialize};

/// Binomial coefficient with saturation instead of overflow.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Number of multisets of size `k` drawn from `n` elements.
pub fn multiset(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    binomial(n + k - 1, k)
}

/// Basis indexing of tensor, symmetric and exterior power spaces.
///
/// Tensor tuples use mixed radix with the first factor most significant.
/// Symmetric tuples are non-decreasing and exterior tuples strictly
/// increasing; both are ranked in lexicographic order, which for monomials
/// is exponent-lexicographic order (`x_0^k` first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TensorIndex {
    Tensor { factor_dims: Vec<usize> },
    Symmetric { base: usize, degree: usize },
    Exterior { base: usize, degree: usize },
}

impl TensorIndex {
    pub fn tensor(factor_dims: Vec<usize>) -> Self {
        TensorIndex::Tensor { factor_dims }
    }

    pub fn symmetric(base: usize, degree: usize) -> Self {
        TensorIndex::Symmetric { base, degree }
    }

    pub fn exterior(base: usize, degree: usize) -> Self {
        TensorIndex::Exterior { base, degree }
    }

    pub fn dim(&self) -> usize {
        match self {
            TensorIndex::Tensor { factor_dims } => factor_dims.iter().product(),
            TensorIndex::Symmetric { base, degree } => multiset(*base, *degree),
            TensorIndex::Exterior { base, degree } => binomial(*base, *degree),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            TensorIndex::Tensor { factor_dims } => factor_dims.len(),
            TensorIndex::Symmetric { degree, .. } | TensorIndex::Exterior { degree, .. } => *degree,
        }
    }

    /// Common factor dimension, if all factors agree.
    pub fn base(&self) -> Option<usize> {
        match self {
            TensorIndex::Tensor { factor_dims } => {
                let first = *factor_dims.first()?;
                factor_dims.iter().all(|&d| d == first).then_some(first)
            }
            TensorIndex::Symmetric { base, .. } | TensorIndex::Exterior { base, .. } => Some(*base),
        }
    }

    pub fn rank(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree());
        match self {
            TensorIndex::Tensor { factor_dims } => {
                tuple.iter().zip(factor_dims).fold(0, |acc, (&t, &d)| {
                    debug_assert!(t < d);
                    acc * d + t
                })
            }
            TensorIndex::Symmetric { base, degree } => {
                debug_assert!(tuple.windows(2).all(|w| w[0] <= w[1]));
                if *degree == 0 {
                    return 0;
                }
                let shifted: Vec<usize> = tuple.iter().enumerate().map(|(t, &a)| a + t).collect();
                lex_rank_increasing(base + degree - 1, &shifted)
            }
            TensorIndex::Exterior { base, .. } => {
                debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
                lex_rank_increasing(*base, tuple)
            }
        }
    }

    pub fn unrank(&self, r: usize) -> Vec<usize> {
        debug_assert!(r < self.dim());
        match self {
            TensorIndex::Tensor { factor_dims } => {
                let mut out = vec![0; factor_dims.len()];
                let mut r = r;
                for (slot, &d) in out.iter_mut().zip(factor_dims).rev() {
                    *slot = r % d;
                    r /= d;
                }
                out
            }
            TensorIndex::Symmetric { base, degree } => {
                if *degree == 0 {
                    return Vec::new();
                }
                let mut t = lex_unrank_increasing(base + degree - 1, *degree, r);
                for (i, a) in t.iter_mut().enumerate() {
                    *a -= i;
                }
                t
            }
            TensorIndex::Exterior { base, degree } => lex_unrank_increasing(*base, *degree, r),
        }
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.dim()).map(move |r| self.unrank(r))
    }
}

// Lex rank of an increasing k-subset of {0..n}, via colex rank of the
// reflected subset.
fn lex_rank_increasing(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let colex: usize = tuple
        .iter()
        .rev()
        .enumerate()
        .map(|(t, &a)| binomial(n - 1 - a, t + 1))
        .sum();
    binomial(n, k) - 1 - colex
}

fn lex_unrank_increasing(n: usize, k: usize, r: usize) -> Vec<usize> {
    let mut colex = binomial(n, k) - 1 - r;
    let mut reflected = vec![0; k];
    let mut hi = n;
    for t in (0..k).rev() {
        // Largest b < hi with C(b, t+1) <= colex.
        let mut b = hi - 1;
        while binomial(b, t + 1) > colex {
            b -= 1;
        }
        colex -= binomial(b, t + 1);
        reflected[t] = b;
        hi = b;
    }
    // reflected is increasing; map back a = n-1-b and reverse.
    reflected.iter().rev().map(|&b| n - 1 - b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        assert_eq!(TensorIndex::symmetric(4, 2).dim(), 10);
        assert_eq!(TensorIndex::exterior(8, 4).dim(), 70);
        assert_eq!(TensorIndex::tensor(vec![2, 3, 4]).dim(), 24);
        assert_eq!(TensorIndex::symmetric(0, 0).dim(), 1);
        assert_eq!(TensorIndex::exterior(3, 0).dim(), 1);
    }

    #[test]
    fn lex_orders() {
        let s = TensorIndex::symmetric(2, 3);
        let all: Vec<Vec<usize>> = s.tuples().collect();
        assert_eq!(
            all,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
        );
        let e = TensorIndex::exterior(4, 2);
        let all: Vec<Vec<usize>> = e.tuples().collect();
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[2], vec![0, 3]);
        assert_eq!(all[3], vec![1, 2]);
        assert_eq!(all[5], vec![2, 3]);
        let t = TensorIndex::tensor(vec![2, 3]);
        assert_eq!(t.rank(&[1, 0]), 3);
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 0..=8 {
            for k in 0..=4 {
                for idx in [TensorIndex::symmetric(n, k), TensorIndex::exterior(n, k)] {
                    for r in 0..idx.dim() {
                        assert_eq!(idx.rank(&idx.unrank(r)), r, "{idx:?}");
                    }
                }
            }
        }
    }
}
