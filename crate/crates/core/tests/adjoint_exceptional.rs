use std::time::Instant;

use liecraft_core::adjoint::{run_adjoint, AdjointOutput};
use liecraft_core::exactlin::SparseVec;
use liecraft_core::minuscule::run_minuscule;
use liecraft_core::repcore::{sl_standard, Representation};

fn check(out: &AdjointOutput, dims: [usize; 5]) {
    assert_eq!(out.grading.dims(), dims);
    assert!(out.jacobi.passed());
    assert!(out.simple);
    assert!(out.quartic.factor.is_some());
}

#[test]
fn f4_from_sp6() {
    let sl3 = sl_standard(3);
    let m = run_minuscule(&sl3.symmetric_power(2), "v2(P2)").unwrap();
    let t = m.module.rep.clone();
    assert_eq!(t.module_dim(), 14);
    check(&run_adjoint(&t, "f4").unwrap(), [1, 14, 22, 14, 1]);
}

#[test]
fn e6_from_sl6() {
    let sl3 = sl_standard(3);
    let m = run_minuscule(&Representation::outer_tensor(&sl3, &sl3), "seg(P2,P2)").unwrap();
    assert_eq!(m.module.rep.module_dim(), 20);
    check(
        &run_adjoint(&m.module.rep, "e6").unwrap(),
        [1, 20, 36, 20, 1],
    );
}

#[test]
fn e7_from_so12() {
    let t = sl_standard(6)
        .exterior_power(2)
        .with_extreme(SparseVec::unit(0));
    let m = run_minuscule(&t, "G(2,6)").unwrap();
    assert_eq!(m.module.rep.module_dim(), 32);
    check(
        &run_adjoint(&m.module.rep, "e7").unwrap(),
        [1, 32, 67, 32, 1],
    );
}

#[test]
fn e8_from_e7() {
    let start = Instant::now();
    let t = sl_standard(5)
        .exterior_power(2)
        .with_extreme(SparseVec::unit(0));
    let m = run_minuscule(&t, "G(2,5)").unwrap();
    let m = run_minuscule(&m.module.rep, "S5").unwrap();
    let m = run_minuscule(&m.module.rep, "E6").unwrap();
    assert_eq!(m.module.rep.module_dim(), 56);
    let out = run_adjoint(&m.module.rep, "e8").unwrap();
    check(&out, [1, 56, 134, 56, 1]);
    assert!(!out.jacobi.exhaustive);
    eprintln!("e8 chain in {:?}", start.elapsed());
}
