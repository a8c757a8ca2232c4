use super::{
    extract_symplectic, finish_frame, phi_polynomial, run_adjoint, AdjointError, AdjointFrame,
    AdjointOutput,
};
use crate::exactlin::{Rational, RationalMatrix, SparseVec};
use crate::repcore::{matrix_algebra, sp_standard, Representation};

/// `sp_{2m}` from `(sp_{2m−2}, C^{2m−2})` through the ordinary pipeline.
/// The quartic vanishes identically here.
pub fn special_case_c(m: usize) -> Result<AdjointOutput, AdjointError> {
    assert!(m >= 2);
    run_adjoint(&sp_standard(m - 1), &format!("sp{}", 2 * m))
}

fn unit(n: usize, i: usize, j: usize) -> RationalMatrix {
    RationalMatrix::from_triplets(n, n, [(i, j, Rational::one())])
}

/// `gl_k` acting on `U ⊕ U*` with `U = C^k`: the `sl_k` part followed by
/// the center, which acts by `+1` on `U` and `−1` on `U*`.
pub fn gl_on_split(k: usize) -> Representation {
    assert!(k >= 1);
    let lift = |a: &RationalMatrix| a.direct_sum(&a.transpose().scale(&-Rational::one()));
    let mut basis = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                basis.push(lift(&unit(k, i, j)));
            }
        }
    }
    for i in 0..k.saturating_sub(1) {
        basis.push(lift(&unit(k, i, i).sub(&unit(k, i + 1, i + 1))));
    }
    basis.push(lift(&RationalMatrix::identity(k)));
    matrix_algebra(
        basis,
        Some(SparseVec::unit(0)),
        &format!("gl{k}"),
        &format!("C{k}+dual"),
    )
    .unwrap()
}

/// `sl_{k+1}` from `h = gl_{k−1}` and `T₁ = U ⊕ U*`, outside the
/// admissibility test since `T₁` is reducible.
pub fn special_case_a(k: usize) -> Result<AdjointOutput, AdjointError> {
    assert!(k >= 2);
    let t = gl_on_split(k - 1);
    let (omega, omega_star) = extract_symplectic(&t)?;
    let frame = AdjointFrame::new(&t, omega, omega_star)?;
    finish_frame(frame, None, &format!("sl{}", k + 1))
}

/// The entries of the quartic parametrization of the `sl₃` adjoint variety
/// in variables `(a, b, c, d)`, as `(exponents, row, column, coefficient)`.
pub fn sl3_display_terms() -> Vec<([u32; 4], usize, usize, i64)> {
    vec![
        ([3, 0, 0, 1], 0, 0, 1),
        ([2, 1, 1, 0], 0, 0, 1),
        ([2, 1, 0, 1], 0, 1, -1),
        ([1, 2, 1, 0], 0, 1, -1),
        ([0, 2, 2, 0], 0, 2, 1),
        ([2, 0, 0, 2], 0, 2, -1),
        ([3, 0, 1, 0], 1, 0, 2),
        ([2, 1, 1, 0], 1, 1, -2),
        ([1, 1, 2, 0], 1, 2, 2),
        ([2, 0, 1, 1], 1, 2, -2),
        ([4, 0, 0, 0], 2, 0, 1),
        ([3, 1, 0, 0], 2, 1, -1),
        ([2, 1, 1, 0], 2, 2, 1),
        ([3, 0, 0, 1], 2, 2, -1),
    ]
}

/// Display matrix of one monomial, as a vector of `gl₃` in row-major order.
fn display_coefficients() -> std::collections::BTreeMap<[u32; 4], SparseVec> {
    let mut out: std::collections::BTreeMap<[u32; 4], SparseVec> = Default::default();
    for (e, i, j, c) in sl3_display_terms() {
        let slot = out.entry(e).or_default();
        *slot = slot.add(&SparseVec::unit(3 * i + j).scale(&Rational::from_int(c)));
    }
    out
}

/// Identification of the constructed `sl₃` with `3×3` matrices under which
/// the map reproduces the display.
#[derive(Clone, Debug)]
pub struct Sl3Display {
    /// Column `i` is the matrix (row-major) of basis vector `i`.
    pub to_matrices: RationalMatrix,
    /// The display is `scale` times the image of the map.
    pub scale: Rational,
    /// Whether every monomial of the display matches.
    pub matches: bool,
    /// Whether the identification is a Lie algebra isomorphism.
    pub homomorphism: bool,
}

impl Sl3Display {
    /// The display at `(a, b, c, d)` as a `3×3` matrix.
    pub fn image(
        &self,
        out: &AdjointOutput,
        p: [&Rational; 4],
    ) -> Result<Vec<Vec<Rational>>, AdjointError> {
        let v = super::evaluate_phi_adjoint(
            &out.algebra,
            &out.frame,
            &out.grading,
            p[0],
            &[p[1].clone(), p[2].clone()],
            p[3],
        )?;
        let m = self.to_matrices.apply(&v).scale(&self.scale);
        Ok((0..3)
            .map(|i| (0..3).map(|j| m.get(3 * i + j)).collect())
            .collect())
    }
}

fn exps(e: &[u32]) -> [u32; 4] {
    [e[0], e[1], e[2], e[3]]
}

/// Finds the linear identification from the monomials `a⁴, a³b, a³c, a³d,
/// a²bc, a²bd, a²cd, a²d²`, whose coefficient vectors form a basis. The
/// overall scale comes from the one bracket relation `[a³d, a³b]`;
/// everything else is then checked.
pub fn sl3_display(out: &AdjointOutput) -> Result<Sl3Display, AdjointError> {
    if out.frame.n() != 2 || out.dim() != 8 {
        return Err(AdjointError::NotSl3);
    }
    let poly = phi_polynomial(&out.algebra, &out.frame, &out.grading);
    let coeff: std::collections::BTreeMap<[u32; 4], SparseVec> =
        poly.iter().map(|(e, v)| (exps(e), v.clone())).collect();
    let disp = display_coefficients();
    let gens: [[u32; 4]; 8] = [
        [4, 0, 0, 0],
        [3, 1, 0, 0],
        [3, 0, 1, 0],
        [3, 0, 0, 1],
        [2, 1, 1, 0],
        [2, 1, 0, 1],
        [2, 0, 1, 1],
        [2, 0, 0, 2],
    ];
    let get = |e: &[u32; 4]| coeff.get(e).cloned().unwrap_or_default();
    // With L(v_m) = M_m / s, the relation [v_d, v_b] = κ v_b against
    // [M_d, M_b] = μ M_b forces s = μ / κ.
    let vd = get(&[3, 0, 0, 1]);
    let vb = get(&[3, 1, 0, 0]);
    let kappa = ratio(&out.algebra.bracket(&vd, &vb), &vb).ok_or(AdjointError::NotSl3)?;
    let md = to_mat(&disp[&[3, 0, 0, 1]]);
    let mb = to_mat(&disp[&[3, 1, 0, 0]]);
    let mu = ratio(&from_mat(&md.commutator(&mb)), &from_mat(&mb)).ok_or(AdjointError::NotSl3)?;
    let scale = &mu / &kappa;
    let src: Vec<SparseVec> = gens.iter().map(get).collect();
    let dst: Vec<SparseVec> = gens
        .iter()
        .map(|e| {
            disp.get(e)
                .cloned()
                .unwrap_or_default()
                .scale(&scale.recip())
        })
        .collect();
    let basis_change = crate::exactlin::inverse(&RationalMatrix::from_columns(8, src))
        .ok_or(AdjointError::NotSl3)?;
    let to_matrices = RationalMatrix::from_columns(9, dst).mul(&basis_change);
    let mats: Vec<RationalMatrix> = (0..8).map(|i| to_mat(to_matrices.column(i))).collect();
    let homomorphism = (0..8).all(|i| {
        (0..8).all(|j| {
            let lhs = to_matrices.apply(out.algebra.bracket_basis(i, j));
            lhs == from_mat(&mats[i].commutator(&mats[j]))
        })
    });
    let mut keys: Vec<[u32; 4]> = coeff.keys().cloned().collect();
    keys.extend(disp.keys().cloned());
    keys.sort();
    keys.dedup();
    let matches = keys.iter().all(|e| {
        let image = to_matrices.apply(&get(e)).scale(&scale);
        image == disp.get(e).cloned().unwrap_or_default()
    });
    Ok(Sl3Display {
        to_matrices,
        scale,
        matches,
        homomorphism,
    })
}

fn ratio(a: &SparseVec, b: &SparseVec) -> Option<Rational> {
    let (i, y) = b.leading()?;
    let r = &a.get(i) / y;
    (b.scale(&r) == *a).then_some(r)
}

fn to_mat(v: &SparseVec) -> RationalMatrix {
    RationalMatrix::from_triplets(3, 3, v.iter().map(|(k, x)| (k / 3, k % 3, x.clone())))
}

fn from_mat(m: &RationalMatrix) -> SparseVec {
    SparseVec::from_pairs(m.triplets().map(|(i, j, x)| (3 * i + j, x.clone())))
}
