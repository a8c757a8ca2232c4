use liecraft_core::exactlin::{binomial, SparseVec};
use liecraft_core::minuscule::run_minuscule;
use liecraft_core::repcore::{sl_standard, Representation};

fn catalan(n: usize) -> usize {
    binomial(2 * n, n) / (n + 1)
}

#[test]
fn lagrangian_totals_are_catalan() {
    for m in 2..=5 {
        let t = sl_standard(m).symmetric_power(2);
        let out = run_minuscule(&t, "g").unwrap();
        assert_eq!(out.ladder.total_dim(), catalan(m + 1), "m = {m}");
        assert_eq!(out.algebra.dim(), m * (2 * m + 1));
    }
}

#[test]
fn spinor_totals_are_powers_of_two() {
    for m in 4..=7 {
        let t = sl_standard(m)
            .exterior_power(2)
            .with_extreme(SparseVec::unit(0));
        let out = run_minuscule(&t, "g").unwrap();
        assert_eq!(out.ladder.total_dim(), 1 << (m - 1), "m = {m}");
        assert_eq!(out.algebra.dim(), m * (2 * m - 1));
    }
}

#[test]
fn grassmann_totals_are_binomial() {
    for n in 3..=8 {
        for k in 1..n {
            let l = n - k;
            let t = match (k, l) {
                (1, _) => sl_standard(l),
                (_, 1) => sl_standard(k),
                _ => Representation::outer_tensor(&sl_standard(k), &sl_standard(l)),
            };
            let out = run_minuscule(&t, "g").unwrap();
            assert_eq!(out.ladder.total_dim(), binomial(n, k), "G({k},{n})");
            assert_eq!(out.algebra.dim(), n * n - 1);
        }
    }
}
