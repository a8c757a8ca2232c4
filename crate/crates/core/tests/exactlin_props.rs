use liecraft_core::exactlin::*;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn big_rat() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(
        prop_oneof![3 => Just(Rational::zero()), 2 => rat()],
        rows * cols,
    )
    .prop_map(move |v| {
        let dense: Vec<Vec<Rational>> = v.chunks(cols).map(|c| c.to_vec()).collect();
        RationalMatrix::from_dense(&dense)
    })
}

proptest! {
    #[test]
    fn field_axioms(a in big_rat(), b in big_rat(), c in big_rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn kernel_multiplies_back(m in matrix(4, 6)) {
        let k = kernel(&m);
        for v in k.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
        let rank = Subspace::from_vectors(6, m.row_vectors().iter()).dim();
        prop_assert_eq!(k.dim(), 6 - rank);
    }

    #[test]
    fn annihilator_involution(m in matrix(5, 4)) {
        let s = Subspace::from_vectors(5, m.columns().iter());
        let ann = annihilator(&s);
        prop_assert_eq!(ann.dim(), 5 - s.dim());
        for f in ann.basis() {
            for v in s.basis() {
                prop_assert!(f.dot(v).is_zero());
            }
        }
        prop_assert_eq!(annihilator(&ann), s);
    }

    #[test]
    fn span_closure_is_invariant(a in matrix(5, 5), b in matrix(5, 5), seed in proptest::collection::vec(rat(), 5)) {
        let v = SparseVec::from_dense(&seed);
        let s = span_closure(&[a.clone(), b.clone()], std::slice::from_ref(&v), 5).unwrap();
        prop_assert!(s.contains(&v));
        for w in s.basis() {
            prop_assert!(s.contains(&a.apply(w)));
            prop_assert!(s.contains(&b.apply(w)));
        }
    }

    #[test]
    fn induced_is_lie_homomorphism(a in matrix(3, 3), b in matrix(3, 3), k in 0usize..=3) {
        let ab = a.commutator(&b);
        for idx in [TensorIndex::symmetric(3, k), TensorIndex::exterior(3, k), TensorIndex::tensor(vec![3; k])] {
            let ia = induced_power_matrix(&a, &idx).unwrap();
            let ib = induced_power_matrix(&b, &idx).unwrap();
            prop_assert_eq!(induced_power_matrix(&ab, &idx).unwrap(), ia.commutator(&ib));
        }
    }

    #[test]
    fn inverse_roundtrip(m in matrix(4, 4)) {
        if let Some(inv) = inverse(&m) {
            prop_assert_eq!(m.mul(&inv), RationalMatrix::identity(4));
        } else {
            prop_assert!(kernel(&m).dim() > 0);
        }
    }
}

#[test]
fn rank_four_kernel_is_two_dimensional() {
    let m = RationalMatrix::from_dense(
        &[
            [1, 2, 0, -1, 3, 1],
            [0, 1, 1, 2, -1, 0],
            [2, 0, 1, 1, 1, -1],
            [1, 1, -1, 0, 2, 2],
        ]
        .map(|row| {
            row.iter()
                .zip([1, 2, 3, 1, 5, 7])
                .map(|(&n, d)| Rational::new(n, d))
                .collect::<Vec<_>>()
        }),
    );
    let k = kernel(&m);
    assert_eq!(k.dim(), 2);
    for v in k.basis() {
        assert!(m.apply(v).is_zero());
    }
}

#[test]
fn rank_unrank_full_range() {
    for n in 1..=8 {
        for k in 0..=4 {
            let t = TensorIndex::tensor(vec![n; k]);
            for idx in [TensorIndex::symmetric(n, k), TensorIndex::exterior(n, k), t] {
                for r in 0..idx.dim() {
                    assert_eq!(idx.rank(&idx.unrank(r)), r);
                }
            }
        }
        assert_eq!(TensorIndex::symmetric(n, 3).dim(), binomial(n + 2, 3));
    }
}
