use liecraft_core::exactlin::*;
use liecraft_core::repcore::*;

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn p1xp1() -> Representation {
    let t = Representation::sl2_standard();
    Representation::outer_tensor(&t, &t)
}

#[test]
fn killing_of_sum_is_block_diagonal() {
    let s = LieAlgebra::direct_sum(&LieAlgebra::sl2(), &LieAlgebra::sl2(), "sl2+sl2");
    let k = s.killing();
    assert_eq!(k.get(1, 1), r(8));
    assert_eq!(k.get(4, 4), r(8));
    assert_eq!(k.get(3, 5), r(4));
    assert!(k.select(&[0, 1, 2], &[3, 4, 5]).is_zero());
    assert!(s.killing_is_invariant());
}

#[test]
fn derived_modules() {
    let t = Representation::sl2_standard();
    let s3 = t.symmetric_power(3);
    assert_eq!(s3.extreme(), Some(&SparseVec::unit(0)));
    assert_eq!(s3.exterior_power(2).module_dim(), 6);
    assert!(s3.exterior_power(2).is_homomorphism());
    let seg = p1xp1();
    assert_eq!(seg.module_dim(), 4);
    assert_eq!(seg.extreme(), Some(&SparseVec::unit(0)));
    assert!(seg.is_homomorphism());
    assert!(seg.extreme_generates());
    let dd = seg.dual().unwrap().dual().unwrap();
    assert_eq!(dd.action(), seg.action());
}

#[test]
fn cartan_complement_examples() {
    // Seg(P1 x P1): the determinant quadric x00 x11 - x01 x10.
    let seg = p1xp1();
    let ideal = cartan_complement_ideal(&seg).unwrap();
    assert_eq!(ideal.dim(), 1);
    let idx = TensorIndex::symmetric(4, 2);
    let det = SparseVec::from_pairs([(idx.rank(&[0, 3]), r(1)), (idx.rank(&[1, 2]), r(-1))]);
    assert_eq!(ideal, Subspace::from_vectors(10, [&det]));
    assert!(cartan_complement_ideal(&Representation::sl2_standard())
        .unwrap()
        .is_zero());
    // G(2,5): Plücker relations.
    let l2 = sl_standard(5).exterior_power(2);
    let l2 = {
        // Extreme vector e0 ∧ e1 is the first basis vector of Λ².
        let alg = l2.algebra_arc().clone();
        Representation::new(alg, l2.action().to_vec(), Some(SparseVec::unit(0)), "L2C5").unwrap()
    };
    assert_eq!(cartan_component(&l2).unwrap().dim(), 50);
    assert_eq!(cartan_complement_ideal(&l2).unwrap().dim(), 5);
}

#[test]
fn cartan_ideal_is_invariant_under_dual_action() {
    let seg = p1xp1();
    let ideal = cartan_complement_ideal(&seg).unwrap();
    let dual2 = seg.dual().unwrap().symmetric_power(2);
    for m in dual2.action() {
        for v in ideal.basis() {
            assert!(ideal.contains(&m.apply(v)));
        }
    }
}

#[test]
fn tangent_line_spans() {
    assert_eq!(tangent_line_span(&p1xp1()).unwrap().dim(), 6);
    assert_eq!(
        tangent_line_span(&Representation::sl2_standard())
            .unwrap()
            .dim(),
        1
    );
    let t = Representation::sl2_standard();
    let t3 = Representation::outer_tensor(&Representation::outer_tensor(&t, &t), &t);
    assert_eq!(tangent_line_span(&t3).unwrap().dim(), 27);
}

#[test]
fn invariant_vector_examples() {
    let t = Representation::sl2_standard();
    assert_eq!(invariant_vectors(&t.exterior_power(2)).dim(), 1);
    assert_eq!(
        invariant_vectors(&t.symmetric_power(3).exterior_power(2)).dim(),
        1
    );
    assert_eq!(
        invariant_vectors(&t.symmetric_power(2).exterior_power(2)).dim(),
        0
    );
}

#[test]
fn casimir_commutes_with_action() {
    let t = Representation::sl2_standard();
    let t3 = Representation::outer_tensor(&Representation::outer_tensor(&t, &t), &t);
    for m in [
        t3.exterior_power(2),
        t.symmetric_power(3).exterior_power(2),
        p1xp1().symmetric_power(2),
    ] {
        let c = casimir_on(&m, m.algebra().killing()).unwrap();
        for a in m.action() {
            assert!(c.matrix.commutator(a).is_zero());
        }
    }
}

#[test]
fn casimir_two_eigenvalue_on_triple_segre() {
    let t = Representation::sl2_standard();
    let t3 = Representation::outer_tensor(&Representation::outer_tensor(&t, &t), &t);
    let c = casimir_on(&t3.exterior_power(2), t3.algebra().killing()).unwrap();
    assert!(c.scalar.is_none());
    assert_eq!(c.spectrum.len(), 2);
    assert_eq!(c.spectrum.iter().map(|(_, d)| d).sum::<usize>(), 28);
}
