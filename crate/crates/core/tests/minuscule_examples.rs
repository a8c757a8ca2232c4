use liecraft_core::exactlin::{Rational, SparseVec};
use liecraft_core::minuscule::{
    assemble_algebra, evaluate_phi, run_minuscule, theta_operator, MinusculeError,
};
use liecraft_core::repcore::{sl_standard, JacobiMode, Representation};

fn sl2() -> Representation {
    Representation::sl2_standard()
}

#[test]
fn bootstrap_gives_sl2_on_c2() {
    let out = run_minuscule(&Representation::point(), "g").unwrap();
    assert_eq!(out.fingerprint(), (3, 2));
    assert!(out.simple);
    assert_eq!(out.ladder.dims(), [1, 1]);
    assert_eq!(out.module.c0, Rational::new(-1, 2));
}

#[test]
fn sl2_gives_sl3_on_c3() {
    let out = run_minuscule(&sl2(), "g").unwrap();
    assert_eq!(out.fingerprint(), (8, 3));
    assert!(out.simple && out.jacobi.exhaustive);
    assert_eq!(out.ladder.dims(), [1, 2]);
}

#[test]
fn chained_rounds_follow_projective_spaces() {
    let first = run_minuscule(&Representation::point(), "g").unwrap();
    let second = run_minuscule(&first.module.rep, "g").unwrap();
    assert_eq!(second.fingerprint(), (8, 3));
    let third = run_minuscule(&second.module.rep, "g").unwrap();
    assert_eq!(third.fingerprint(), (15, 4));
}

#[test]
fn conic_gives_sp4() {
    let out = run_minuscule(&sl2().symmetric_power(2), "g").unwrap();
    assert_eq!(out.fingerprint(), (10, 5));
    assert_eq!(out.ladder.dims(), [1, 3, 1]);
}

#[test]
fn quadric_surface_ladder() {
    let t = Representation::outer_tensor(&sl2(), &sl2());
    let out = run_minuscule(&t, "g").unwrap();
    assert_eq!(out.ladder.dims(), [1, 4, 1]);
    assert_eq!(out.fingerprint(), (15, 6));
}

#[test]
fn segre_of_planes_ladder() {
    let s = sl_standard(3);
    let t = Representation::outer_tensor(&s, &s);
    let out = run_minuscule(&t, "g").unwrap();
    assert_eq!(out.ladder.dims(), [1, 9, 9, 1]);
    assert_eq!(out.fingerprint(), (35, 20));
}

#[test]
fn twisted_cubic_is_rejected() {
    let t = sl2().symmetric_power(3);
    assert!(matches!(
        run_minuscule(&t, "g"),
        Err(MinusculeError::Inadmissible)
    ));
}

#[test]
fn doubled_scale_breaks_jacobi() {
    let t = Representation::outer_tensor(&sl2(), &sl2());
    let out = run_minuscule(&t, "g").unwrap();
    let mut th = out.theta.clone();
    th.scale = &th.scale * &Rational::from_int(2);
    let (bad, _) = assemble_algebra(&t, &th, "bad");
    let cert = bad.verify_jacobi(JacobiMode::Full);
    assert!(cert.violation.is_some());
}

#[test]
fn theta_operator_is_homothety() {
    let t = Representation::outer_tensor(&sl2(), &sl2());
    let out = run_minuscule(&t, "g").unwrap();
    let op = theta_operator(&t, &out.theta.form).unwrap();
    assert!(op.as_scalar().is_some());
}

#[test]
fn phi_lands_on_closed_orbit() {
    // Images of the map are annihilated by the degree-2 ideal of the next
    // round, which is the tangent line test on P(C ⊕ T).
    let out = run_minuscule(&sl2(), "g").unwrap();
    let y = [Rational::from_int(2), Rational::new(-1, 3)];
    let img = evaluate_phi(&out.module, &Rational::one(), &y).unwrap();
    assert_eq!(img.nnz(), 3);
    assert!(evaluate_phi(
        &out.module,
        &Rational::zero(),
        &[Rational::zero(), Rational::zero()]
    )
    .is_err());
}

#[test]
fn exceptional_chain() {
    // e0 ∧ e1 is the first exterior basis vector.
    let g25 = sl_standard(5)
        .exterior_power(2)
        .with_extreme(SparseVec::unit(0));
    let so10 = run_minuscule(&g25, "g").unwrap();
    assert_eq!(so10.fingerprint(), (45, 16));
    let e6 = run_minuscule(&so10.module.rep, "g").unwrap();
    assert_eq!(e6.fingerprint(), (78, 27));
    let e7 = run_minuscule(&e6.module.rep, "g").unwrap();
    assert_eq!(e7.fingerprint(), (133, 56));
    assert_eq!(e7.ladder.dims(), [1, 27, 27, 1]);
    assert!(e7.simple);
}
