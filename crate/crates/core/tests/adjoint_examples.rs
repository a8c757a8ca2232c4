use liecraft_core::adjoint::{
    adjoint_admissible, base_locus_report, evaluate_phi_adjoint, extract_symplectic, orbit_series,
    orbit_series_closed, run_adjoint, sl3_display, solve_l, special_case_a, special_case_c,
    AdjointError, AdjointFrame,
};
use liecraft_core::exactlin::{Rational, SparseVec};
use liecraft_core::repcore::Representation;
use liecraft_core::seeded_rng;
use rand::Rng;

fn sl2() -> Representation {
    Representation::sl2_standard()
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn random_point(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect()
}

#[test]
fn binary_cubics_give_g2() {
    let out = run_adjoint(&sl2().symmetric_power(3), "g2").unwrap();
    assert_eq!(out.grading.dims(), [1, 4, 4, 4, 1]);
    assert!(out.simple && out.jacobi.exhaustive && out.jacobi.passed());
    assert!(out.quartic.factor.is_some());
}

#[test]
fn binary_quadrics_are_inadmissible() {
    let adm = adjoint_admissible(&sl2().symmetric_power(2)).unwrap();
    assert!(!adm.admissible);
    assert_eq!(adm.invariant_lines, 0);
    assert!(matches!(
        run_adjoint(&sl2().symmetric_power(2), "g"),
        Err(AdjointError::Inadmissible)
    ));
}

#[test]
fn triple_segre_gives_so8() {
    let t = Representation::outer_tensor(&Representation::outer_tensor(&sl2(), &sl2()), &sl2());
    let out = run_adjoint(&t, "so8").unwrap();
    assert_eq!(out.dim(), 28);
    assert_eq!(out.grading.dims(), [1, 8, 10, 8, 1]);
    assert!(out.simple);
}

#[test]
fn c2_from_sl2() {
    let out = special_case_c(2).unwrap();
    assert_eq!(out.dim(), 10);
    assert!(out.quartic.is_zero());
    assert!(out.simple);
    let c3 = special_case_c(3).unwrap();
    assert_eq!(c3.dim(), 21);
    assert!(c3.quartic.is_zero());
}

#[test]
fn a_series_gives_sl() {
    for k in 2..=4 {
        let out = special_case_a(k).unwrap();
        assert_eq!(out.dim(), (k + 1) * (k + 1) - 1, "k = {k}");
        assert!(out.simple);
    }
}

#[test]
fn sl3_display_is_reproduced() {
    let out = special_case_a(2).unwrap();
    let disp = sl3_display(&out).unwrap();
    assert!(disp.homomorphism);
    assert!(disp.matches);
    let mut rng = seeded_rng(3);
    for _ in 0..50 {
        let mut p = random_point(&mut rng, 4);
        if p[0].is_zero() {
            p[0] = r(1);
        }
        let m = disp.image(&out, [&p[0], &p[1], &p[2], &p[3]]).unwrap();
        let trace: Rational = (0..3).map(|i| m[i][i].clone()).sum();
        assert!(trace.is_zero());
        for (i, j, k, l) in [
            (0, 1, 0, 1),
            (0, 1, 0, 2),
            (0, 1, 1, 2),
            (0, 2, 0, 1),
            (0, 2, 0, 2),
            (0, 2, 1, 2),
            (1, 2, 0, 1),
            (1, 2, 0, 2),
            (1, 2, 1, 2),
        ] {
            let minor = &(&m[i][k] * &m[j][l]) - &(&m[i][l] * &m[j][k]);
            assert!(minor.is_zero());
        }
    }
}

#[test]
fn g2_orbit_series() {
    let out = run_adjoint(&sl2().symmetric_power(3), "g2").unwrap();
    let zero = vec![Rational::zero(); 4];
    let s0 = orbit_series(&out.algebra, &out.frame, &out.grading, &r(3), &zero);
    assert_eq!(s0[0], SparseVec::unit(out.grading.center).scale(&r(6)));
    assert_eq!(s0[1], SparseVec::unit(out.grading.low).scale(&r(72)));
    assert!(s0[2].is_zero() && s0[3].is_zero() && s0[4].is_zero());
    let mut rng = seeded_rng(5);
    let mut ratio: Option<Rational> = None;
    for _ in 0..20 {
        let x = random_point(&mut rng, 1).pop().unwrap();
        let u = random_point(&mut rng, 4);
        let s = orbit_series(&out.algebra, &out.frame, &out.grading, &x, &u);
        assert_eq!(s, orbit_series_closed(&out.frame, &out.grading, &x, &u));
        assert!(s[4].is_zero());
        assert_eq!(
            s[3],
            SparseVec::unit(out.grading.low).scale(&s[3].get(out.grading.low))
        );
        let p = out.quartic.eval(&u);
        let c = s[3].get(out.grading.low);
        let rho = ratio.get_or_insert_with(|| &c / &p);
        assert_eq!(c, &*rho * &p);
    }
}

#[test]
fn g2_quartic_is_discriminant() {
    let out = run_adjoint(&sl2().symmetric_power(3), "g2").unwrap();
    let mut rng = seeded_rng(9);
    // Monomial basis e0³, e0²e1, e0e1², e1³ with coefficients w0..w3.
    let disc = |w: &[Rational]| {
        let (a, b, c, d) = (&w[0], &w[1], &w[2], &w[3]);
        &(&(&(&(b * b) * &(c * c)) - &(r(4) * &(a * &(c * &(c * c)))))
            - &(r(4) * &(&(b * &(b * b)) * d)))
            - &(&(r(27) * &(&(a * a) * &(d * d))) - &(r(18) * &(&(a * b) * &(c * d))))
    };
    let w = random_point(&mut rng, 4);
    let ratio = &out.quartic.eval(&w) / &disc(&w);
    for _ in 0..10 {
        let w = random_point(&mut rng, 4);
        assert_eq!(out.quartic.eval(&w), &ratio * &disc(&w));
    }
    // Tangent lines of the twisted cubic: (s e0 + t e1)³ + τ (s e0 + t e1)²(s' e0 + t' e1).
    for _ in 0..25 {
        let q = random_point(&mut rng, 5);
        let (s, t, s2, t2, tau) = (&q[0], &q[1], &q[2], &q[3], &q[4]);
        let cube = [
            s * &(s * s),
            r(3) * &(s * &(s * t)),
            r(3) * &(s * &(t * t)),
            t * &(t * t),
        ];
        let tang = [
            &(s * s) * s2,
            &(&(s * s) * t2) + &(r(2) * &(&(s * t) * s2)),
            &(&(t * t) * s2) + &(r(2) * &(&(s * t) * t2)),
            &(t * t) * t2,
        ];
        let w: Vec<Rational> = (0..4).map(|i| &cube[i] + &(tau * &tang[i])).collect();
        assert!(out.quartic.eval(&w).is_zero());
    }
    assert!(out.quartic.eval(&[r(1), r(0), r(0), r(0)]).is_zero());
}

#[test]
fn g2_base_locus() {
    let out = run_adjoint(&sl2().symmetric_power(3), "g2").unwrap();
    let rep = base_locus_report(&out.frame).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn scaled_omega_star_scales_l() {
    let t = sl2().symmetric_power(3);
    let (omega, w) = extract_symplectic(&t).unwrap();
    let mut f1 = AdjointFrame::new(&t, omega.clone(), w.clone()).unwrap();
    solve_l(&mut f1).unwrap();
    let mut f3 = AdjointFrame::new(&t, omega, w.scale(&r(3))).unwrap();
    solve_l(&mut f3).unwrap();
    assert_eq!(f3.l().unwrap(), &(r(3) * f1.l().unwrap()));
}

#[test]
fn phi_base_point() {
    let out = run_adjoint(&sl2().symmetric_power(3), "g2").unwrap();
    let zero = vec![Rational::zero(); 4];
    let img =
        evaluate_phi_adjoint(&out.algebra, &out.frame, &out.grading, &r(1), &zero, &r(0)).unwrap();
    assert_eq!(img, SparseVec::unit(out.grading.high));
    assert!(
        evaluate_phi_adjoint(&out.algebra, &out.frame, &out.grading, &r(0), &zero, &r(0)).is_err()
    );
}
