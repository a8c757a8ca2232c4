use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MinusculeError;
use crate::exactlin::{inverse, Accumulator, Rational, RationalMatrix, SparseVec, TensorIndex};
use crate::repcore::{
    block_casimirs, casimir_matrix, report, solve_block_weights, tangent_line_span, weighted_form,
    CasimirReport, Representation,
};

/// Largest `dim Λ²T` for which the tangent-span cross-check is run.
pub const TANGENT_CHECK_CAP: usize = 1600;

/// Result of the minuscule admissibility test.
#[derive(Clone, Debug)]
pub struct Admissibility {
    pub admissible: bool,
    /// Per-ideal weights `t` (first is 1) making the Casimir on `Λ²T` a
    /// homothety, when they exist.
    pub weights: Option<Vec<Rational>>,
    /// Casimir on `Λ²T` for the weighted form (or the Killing form when no
    /// weights exist).
    pub casimir: CasimirReport,
    /// `dim ⟨T(Y)⟩` when the cross-check ran.
    pub tangent_span_dim: Option<usize>,
}

/// Admissible iff some invariant form makes the Casimir on `Λ²T` a
/// homothety. When `Λ²T` is small enough this is cross-checked against the
/// tangent-line span being everything.
pub fn minuscule_admissible(t: &Representation) -> Result<Admissibility, MinusculeError> {
    let n = t.module_dim();
    let wedge = t.exterior_power(2);
    let mats = block_casimirs(&wedge)?;
    let id = RationalMatrix::identity(wedge.module_dim());
    let solved = solve_block_weights(&mats, &id);
    let matrix = match &solved {
        Some((w, _)) => mats.iter().zip(w).fold(
            RationalMatrix::zeros(id.rows(), id.rows()),
            |acc, (m, t)| acc.add_scaled(t, m),
        ),
        None => mats
            .iter()
            .fold(RationalMatrix::zeros(id.rows(), id.rows()), |acc, m| {
                acc.add(m)
            }),
    };
    let casimir = report(wedge.label(), matrix);
    let admissible = solved.is_some();
    let wedge_dim = n * n.saturating_sub(1) / 2;
    let tangent_span_dim = if wedge_dim <= TANGENT_CHECK_CAP && t.extreme().is_some() {
        let d = tangent_line_span(t)?.dim();
        if (d == wedge_dim) != admissible {
            return Err(MinusculeError::AdmissibilityDisagreement {
                casimir: admissible,
                tangent_dim: d,
                wedge_dim,
            });
        }
        Some(d)
    } else {
        None
    };
    Ok(Admissibility {
        admissible,
        weights: solved.map(|(w, _)| w),
        casimir,
        tangent_span_dim,
    })
}

/// The bracket component `T* ⊗ T → h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaMap {
    pub h_dim: usize,
    pub t_dim: usize,
    /// `theta[a * t_dim + b] = θ(e_a* ⊗ e_b)` in the basis of h.
    pub theta: Vec<SparseVec>,
    /// Jacobi-fixing constant multiplying θ in `[u*, v]`.
    pub scale: Rational,
    /// Homothety value of `Θ = C_{Λ²T} − 2 c_T Id`.
    pub theta_scalar: Rational,
    /// Per-ideal weights of the invariant form.
    pub weights: Vec<Rational>,
    /// The invariant form used for dual bases.
    pub form: RationalMatrix,
}

impl ThetaMap {
    pub fn get(&self, a: usize, b: usize) -> &SparseVec {
        &self.theta[a * self.t_dim + b]
    }
}

/// `θ(e_a*⊗e_b)_j = Σ_i Binv_{ji} ρ(x_i)_{ab}` for the form `form`.
pub fn theta_tensor(
    t: &Representation,
    form: &RationalMatrix,
) -> Result<Vec<SparseVec>, MinusculeError> {
    let m = t.algebra().dim();
    let n = t.module_dim();
    if m == 0 {
        return Ok(vec![SparseVec::new(); n * n]);
    }
    let binv = inverse(form).ok_or(MinusculeError::Rep(
        crate::repcore::RepError::DegenerateForm,
    ))?;
    let mut per_pair: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n * n];
    for i in 0..m {
        for (a, b, x) in t.rho(i).triplets() {
            // column i of Binv gives Binv_{ji} over j
            for (j, y) in binv.column(i).iter() {
                per_pair[a * n + b].push((j, x * y));
            }
        }
    }
    Ok(per_pair.into_iter().map(SparseVec::from_pairs).collect())
}

/// `Θ(v∧w) = 2 Σ X_i v ∧ Y_i w` on `Λ²T`, with dual bases for `form`.
pub fn theta_operator(
    t: &Representation,
    form: &RationalMatrix,
) -> Result<RationalMatrix, MinusculeError> {
    let n = t.module_dim();
    let idx = TensorIndex::exterior(n, 2);
    let m = t.algebra().dim();
    if m == 0 {
        return Ok(RationalMatrix::zeros(idx.dim(), idx.dim()));
    }
    let binv = inverse(form).ok_or(MinusculeError::Rep(
        crate::repcore::RepError::DegenerateForm,
    ))?;
    let ys: Vec<RationalMatrix> = (0..m).map(|i| t.rho_of(binv.column(i))).collect();
    let two = Rational::from_int(2);
    let columns: Vec<SparseVec> = (0..idx.dim())
        .into_par_iter()
        .map(|c| {
            let pair = idx.unrank(c);
            let (v, w) = (pair[0], pair[1]);
            let mut acc = Accumulator::new(idx.dim());
            for i in 0..m {
                // Well defined on v ∧ w because Σ X_i ⊗ Y_i is symmetric.
                acc_wedge(&mut acc, t.rho(i).column(v), ys[i].column(w), &two, &idx);
            }
            acc.take()
        })
        .collect();
    Ok(RationalMatrix::from_columns(idx.dim(), columns))
}

fn acc_wedge(acc: &mut Accumulator, u: &SparseVec, w: &SparseVec, c: &Rational, idx: &TensorIndex) {
    for (a, x) in u.iter() {
        for (b, y) in w.iter() {
            if a == b {
                continue;
            }
            let v = c * &(x * y);
            if a < b {
                acc.add(idx.rank(&[a, b]), &v);
            } else {
                acc.add(idx.rank(&[b, a]), &-v);
            }
        }
    }
}

/// Casimir of `t` for `form`, summed over the whole algebra (abelian
/// blocks included).
pub fn full_casimir(
    t: &Representation,
    form: &RationalMatrix,
) -> Result<RationalMatrix, MinusculeError> {
    let m = t.algebra().dim();
    if m == 0 {
        let n = t.module_dim();
        return Ok(RationalMatrix::zeros(n, n));
    }
    let idx: Vec<usize> = (0..m).collect();
    let pairs = crate::repcore::dual_basis(form, &idx)?;
    Ok(casimir_matrix(t, &pairs))
}

/// Builds θ and solves its scale from the Jacobi identity on
/// `(T*, T, T)`. The identity reads `δ_ab e_c − δ_ac e_b + s(θ_ab·e_c −
/// θ_ac·e_b) = 0`; `s` is solved on one instance and checked on all.
pub fn build_theta(t: &Representation, adm: &Admissibility) -> Result<ThetaMap, MinusculeError> {
    let weights = adm.weights.clone().ok_or(MinusculeError::Inadmissible)?;
    let alg = t.algebra();
    let n = t.module_dim();
    let form = weighted_form(alg, &weights);
    let theta = theta_tensor(t, &form)?;
    if alg.dim() == 0 {
        return Ok(ThetaMap {
            h_dim: 0,
            t_dim: n,
            theta,
            scale: Rational::zero(),
            theta_scalar: Rational::zero(),
            weights,
            form,
        });
    }
    // Θ homothety value
    let wedge = t.exterior_power(2);
    let c_wedge = full_casimir(&wedge, &form)?;
    let c_t = full_casimir(t, &form)?
        .as_scalar()
        .ok_or(MinusculeError::NotIrreducible(
            "Casimir on T is not a homothety",
        ))?;
    let big_theta = c_wedge.sub(&RationalMatrix::scalar(
        wedge.module_dim(),
        &(Rational::from_int(2) * &c_t),
    ));
    let lambda = big_theta.as_scalar().ok_or(MinusculeError::Inadmissible)?;
    if lambda.is_zero() {
        return Err(MinusculeError::ZeroTheta);
    }
    // Direct solve of s from the (T*,T,T) identity.
    let rho_theta: Vec<RationalMatrix> = theta.par_iter().map(|th| t.rho_of(th)).collect();
    let mut scale: Option<Rational> = None;
    'search: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = rho_theta[a * n + b]
                    .column(c)
                    .sub(rho_theta[a * n + c].column(b));
                if lhs.is_zero() {
                    continue;
                }
                let mut rhs = SparseVec::new();
                if a == b {
                    rhs = rhs.add(&SparseVec::unit(c));
                }
                if a == c {
                    rhs = rhs.sub(&SparseVec::unit(b));
                }
                // s·lhs = −rhs
                let (k, x) = lhs.leading().unwrap();
                let s = -rhs.get(k) / x;
                scale = Some(s);
                break 'search;
            }
        }
    }
    let scale = scale.ok_or(MinusculeError::ZeroTheta)?;
    let ok = (0..n).into_par_iter().all(|a| {
        for b in 0..n {
            for c in b + 1..n {
                let mut v = rho_theta[a * n + b]
                    .column(c)
                    .sub(rho_theta[a * n + c].column(b))
                    .scale(&scale);
                if a == b {
                    v = v.add(&SparseVec::unit(c));
                }
                if a == c {
                    v = v.sub(&SparseVec::unit(b));
                }
                if !v.is_zero() {
                    return false;
                }
            }
        }
        true
    });
    if !ok {
        return Err(MinusculeError::ScaleInconsistent);
    }
    Ok(ThetaMap {
        h_dim: alg.dim(),
        t_dim: n,
        theta,
        scale,
        theta_scalar: lambda,
        weights,
        form,
    })
}
