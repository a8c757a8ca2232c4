use std::collections::BTreeMap;

use super::{AdjointError, AdjointFrame, FiveGrading};
use crate::exactlin::{Rational, SparseVec};
use crate::repcore::LieAlgebra;

/// `X = xω* + u*` as an element of the algebra.
pub fn lowering_element(
    frame: &AdjointFrame,
    gr: &FiveGrading,
    x: &Rational,
    u: &[Rational],
) -> SparseVec {
    let flat = frame.flat(&SparseVec::from_dense(u));
    flat.shifted(gr.minus.start)
        .add_scaled(x, &SparseVec::unit(gr.low))
}

/// `[Xω, X²ω, X³ω, X⁴ω, X⁵ω]` computed by repeated brackets.
pub fn orbit_series(
    g: &LieAlgebra,
    frame: &AdjointFrame,
    gr: &FiveGrading,
    x: &Rational,
    u: &[Rational],
) -> Vec<SparseVec> {
    let big_x = lowering_element(frame, gr, x, u);
    let mut cur = SparseVec::unit(gr.high);
    (0..5)
        .map(|_| {
            cur = g.bracket(&big_x, &cur);
            cur.clone()
        })
        .collect()
}

/// The same five terms from the closed forms:
/// `Xω = 2x·1 + 2u`, `X²ω = 8x²ω* + 8x·u* + 2θ(u*⊗u)`,
/// `X³ω = −2(θ(u*⊗u)u)*`, `X⁴ω = −4β(u, θ(u*⊗u)u)ω*`, `X⁵ω = 0`,
/// where θ carries the solved coefficients (a single `l` when `h` is
/// simple).
pub fn orbit_series_closed(
    frame: &AdjointFrame,
    gr: &FiveGrading,
    x: &Rational,
    u: &[Rational],
) -> Vec<SparseVec> {
    let uv = SparseVec::from_dense(u);
    let flat = frame.flat(&uv);
    let two = Rational::from_int(2);
    let mut big_theta = SparseVec::new();
    for (a, ua) in flat.iter() {
        for (b, ub) in uv.iter() {
            big_theta = big_theta.add_scaled(&(ua * ub), &frame.theta_combined(a, b));
        }
    }
    let tu = frame.t1.rho_of(&big_theta).apply(&uv);
    let a1 = SparseVec::unit(gr.center)
        .scale(&(&two * x))
        .add(&uv.scale(&two).shifted(gr.plus.start));
    let a2 = SparseVec::unit(gr.low)
        .scale(&(Rational::from_int(8) * &(x * x)))
        .add(
            &flat
                .scale(&(Rational::from_int(8) * x))
                .shifted(gr.minus.start),
        )
        .add(&big_theta.scale(&two).shifted(gr.h.start));
    let a3 = frame.flat(&tu).scale(&-two.clone()).shifted(gr.minus.start);
    let beta = frame.beta();
    let b = uv.dot(&beta.apply(&tu));
    let a4 = SparseVec::unit(gr.low).scale(&(Rational::from_int(-4) * &b));
    vec![a1, a2, a3, a4, SparseVec::new()]
}

/// `Σ_k x0^{4−k} X^kω / k!`: the image of `[x0 : u : x]` in `P(g)`.
pub fn evaluate_phi_adjoint(
    g: &LieAlgebra,
    frame: &AdjointFrame,
    gr: &FiveGrading,
    x0: &Rational,
    u: &[Rational],
    x: &Rational,
) -> Result<SparseVec, AdjointError> {
    if u.len() != frame.n() {
        return Err(AdjointError::PointDimension {
            expected: frame.n() + 2,
            found: u.len() + 2,
        });
    }
    let series = orbit_series(g, frame, gr, x, u);
    let mut out = SparseVec::unit(gr.high).scale(&x0.pow(4));
    let mut fact = Rational::one();
    for (k, term) in series.iter().take(4).enumerate() {
        fact = &fact * &Rational::from_int(k as i64 + 1);
        let c = &x0.pow(3 - k as u32) / &fact;
        out = out.add_scaled(&c, term);
    }
    if out.is_zero() {
        return Err(AdjointError::Indeterminate);
    }
    Ok(out)
}

/// Polynomial with vector coefficients, keyed by exponent vectors over the
/// variables `(x0, u_1, …, u_n, x)`.
pub type VectorPolynomial = BTreeMap<Vec<u32>, SparseVec>;

/// The map of [`evaluate_phi_adjoint`] as an exact polynomial. Only meant
/// for small `T₁`: the number of monomials grows like `n⁴`.
pub fn phi_polynomial(g: &LieAlgebra, frame: &AdjointFrame, gr: &FiveGrading) -> VectorPolynomial {
    let n = frame.n();
    let vars = n + 2;
    // ad of each variable's generator: x ↦ ω*, u_a ↦ e_a* = ω(e_a, ·).
    let rows = frame.omega.row_vectors();
    let mut gens: Vec<(usize, SparseVec)> = vec![(n + 1, SparseVec::unit(gr.low))];
    for (a, row) in rows.iter().enumerate() {
        gens.push((a + 1, row.shifted(gr.minus.start)));
    }
    let mut term: VectorPolynomial = BTreeMap::new();
    term.insert(vec![0; vars], SparseVec::unit(gr.high));
    let mut total: VectorPolynomial = BTreeMap::new();
    let mut fact = Rational::one();
    for k in 0..=4u32 {
        if k > 0 {
            let mut next: VectorPolynomial = BTreeMap::new();
            for (e, v) in &term {
                for (var, gen) in &gens {
                    let w = g.bracket(gen, v);
                    if w.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[*var] += 1;
                    let slot = next.entry(e2).or_default();
                    *slot = slot.add(&w);
                }
            }
            next.retain(|_, v| !v.is_zero());
            term = next;
            fact = &fact * &Rational::from_int(k as i64);
        }
        for (e, v) in &term {
            let mut e2 = e.clone();
            e2[0] += 4 - k;
            let slot = total.entry(e2).or_default();
            *slot = slot.add_scaled(&fact.recip(), v);
        }
    }
    total.retain(|_, v| !v.is_zero());
    total
}
