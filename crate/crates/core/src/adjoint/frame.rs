use rayon::prelude::*;

use super::AdjointError;
use crate::exactlin::{inverse, EchelonBuilder, Rational, RationalMatrix, SparseVec, TensorIndex};
use crate::minuscule::{theta_tensor, TANGENT_CHECK_CAP};
use crate::repcore::{
    block_casimirs, block_forms, invariant_vectors, report, solve_block_weights, tangent_line_span,
    CasimirReport, Representation,
};

/// Result of the adjoint admissibility test.
#[derive(Clone, Debug)]
pub struct AdjointAdmissibility {
    pub admissible: bool,
    /// Dimension of the invariant part of `Λ²T₁`.
    pub invariant_lines: usize,
    /// Block weights making the Casimir vanish on the line and act as a
    /// homothety on a complement.
    pub weights: Option<Vec<Rational>>,
    pub casimir: CasimirReport,
    /// Codimension of the tangent-line span, when the cross-check ran.
    pub tangent_codim: Option<usize>,
}

/// `Λ²T₁` must be almost C-irreducible: exactly one invariant line, and a
/// weighted Casimir equal to `c(Id − P)` with `P` the invariant projection.
/// Cross-checked against the tangent-line span having codimension one
/// unless that span is everything.
pub fn adjoint_admissible(t: &Representation) -> Result<AdjointAdmissibility, AdjointError> {
    let wedge = t.exterior_power(2);
    let dim = wedge.module_dim();
    let inv = invariant_vectors(&wedge);
    let mats = block_casimirs(&wedge)?;
    let sum = |w: &[Rational]| {
        mats.iter()
            .zip(w)
            .fold(RationalMatrix::zeros(dim, dim), |acc, (m, t)| {
                acc.add_scaled(t, m)
            })
    };
    let mut weights = None;
    if inv.dim() == 1 {
        let dual_inv = invariant_vectors(&t.dual()?.exterior_power(2));
        let v = &inv.basis()[0];
        let f = &dual_inv.basis()[0];
        let pairing = f.dot(v);
        if pairing.is_zero() {
            return Err(AdjointError::DegenerateSymplectic);
        }
        let proj = RationalMatrix::from_triplets(
            dim,
            dim,
            v.iter().flat_map(|(i, x)| {
                let pairing = &pairing;
                f.iter().map(move |(j, y)| (i, j, &(x * y) / pairing))
            }),
        );
        let target = RationalMatrix::identity(dim).sub(&proj);
        weights = if target.is_zero() {
            Some(vec![Rational::one(); mats.len()])
        } else {
            solve_block_weights(&mats, &target)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, _)| w)
        };
    }
    let matrix = sum(weights
        .as_deref()
        .unwrap_or(&vec![Rational::one(); mats.len()]));
    let casimir = report(wedge.label(), matrix);
    let admissible = weights.is_some();
    let tangent_codim = if dim <= TANGENT_CHECK_CAP && t.extreme().is_some() {
        let codim = dim - tangent_line_span(t)?.dim();
        // Codimension zero means the closed orbit fills P(T₁) and the test
        // says nothing, as for sp on its standard module.
        if codim > 0 && (codim == 1) != admissible {
            return Err(AdjointError::AdmissibilityDisagreement {
                casimir: admissible,
                tangent_codim: codim,
            });
        }
        Some(codim)
    } else {
        None
    };
    Ok(AdjointAdmissibility {
        admissible,
        invariant_lines: inv.dim(),
        weights,
        casimir,
        tangent_codim,
    })
}

/// The invariant two-form `ω` on `T₁` (as `Ω` with `ω(u, v) = uᵀΩv`) and the
/// bivector `ω*` (as `W`), normalized by `W = −Ω⁻¹` so that `ω*(u*, v*) =
/// ω(u, v)` with `u* = ω(u, ·)`.
pub fn extract_symplectic(
    t: &Representation,
) -> Result<(RationalMatrix, RationalMatrix), AdjointError> {
    let n = t.module_dim();
    let inv = invariant_vectors(&t.dual()?.exterior_power(2));
    if inv.dim() != 1 {
        return Err(AdjointError::NoInvariantLine(inv.dim()));
    }
    let idx = TensorIndex::exterior(n, 2);
    let mut trip = Vec::new();
    for (r, x) in inv.basis()[0].iter() {
        let p = idx.unrank(r);
        trip.push((p[0], p[1], x.clone()));
        trip.push((p[1], p[0], -x));
    }
    let omega = RationalMatrix::from_triplets(n, n, trip);
    let w = inverse(&omega)
        .ok_or(AdjointError::DegenerateSymplectic)?
        .scale(&-Rational::one());
    Ok((omega, w))
}

/// Everything the five-graded bracket needs.
#[derive(Clone, Debug)]
pub struct AdjointFrame {
    pub t1: Representation,
    pub omega: RationalMatrix,
    pub omega_star: RationalMatrix,
    /// Per ideal block `k` of `h`, `theta[k][a·n + b] = θ_k(ε_a ⊗ e_b)` with
    /// `ε` the dual basis and `θ_k` built from the block form.
    pub theta: Vec<Vec<SparseVec>>,
    /// Per-block coefficients of `θ_k` in `[u*, v]`; the first is `l`.
    pub coefficients: Vec<Rational>,
}

impl AdjointFrame {
    /// Frame with θ split by blocks and no coefficients solved yet.
    pub fn new(
        t1: &Representation,
        omega: RationalMatrix,
        omega_star: RationalMatrix,
    ) -> Result<Self, AdjointError> {
        let alg = t1.algebra();
        let n = t1.module_dim();
        let blocks = block_forms(alg);
        let mut form_trip = Vec::new();
        let mut owner = vec![0usize; alg.dim()];
        for (k, (idx, form)) in blocks.iter().enumerate() {
            for &i in idx {
                owner[i] = k;
            }
            for (a, b, x) in form.triplets() {
                form_trip.push((idx[a], idx[b], x.clone()));
            }
        }
        let form = RationalMatrix::from_triplets(alg.dim(), alg.dim(), form_trip);
        let full = theta_tensor(t1, &form)?;
        let mut theta = vec![vec![SparseVec::new(); n * n]; blocks.len()];
        for (ab, v) in full.iter().enumerate() {
            let mut parts: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); blocks.len()];
            for (i, x) in v.iter() {
                parts[owner[i]].push((i, x.clone()));
            }
            for (k, p) in parts.into_iter().enumerate() {
                theta[k][ab] = SparseVec::from_sorted(p);
            }
        }
        Ok(AdjointFrame {
            t1: t1.clone(),
            omega,
            omega_star,
            theta,
            coefficients: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.t1.module_dim()
    }

    pub fn l(&self) -> Option<&Rational> {
        self.coefficients.first()
    }

    /// `β = ω*(u*, v*)` as a matrix: `Ω W Ωᵀ`.
    pub fn beta(&self) -> RationalMatrix {
        self.omega
            .mul(&self.omega_star)
            .mul(&self.omega.transpose())
    }

    /// `u*` in the dual basis.
    pub fn flat(&self, u: &SparseVec) -> SparseVec {
        self.omega.transpose().apply(u)
    }

    /// `θ(ε_a ⊗ e_b)` with the solved coefficients.
    pub fn theta_combined(&self, a: usize, b: usize) -> SparseVec {
        let n = self.n();
        let mut out = SparseVec::new();
        for (k, c) in self.coefficients.iter().enumerate() {
            out = out.add_scaled(c, &self.theta[k][a * n + b]);
        }
        out
    }

    /// `θ_k(e_c* ⊗ e_b)` with `e_c* = ω(e_c, ·)`; `rows` are the rows of `Ω`.
    pub fn theta_flat(&self, rows: &[SparseVec], k: usize, c: usize, b: usize) -> SparseVec {
        let n = self.n();
        let mut out = SparseVec::new();
        for (d, x) in rows[c].iter() {
            out = out.add_scaled(x, &self.theta[k][d * n + b]);
        }
        out
    }

    /// θ symmetry `θ(u*⊗v) = θ(v*⊗u)` on all basis pairs.
    pub fn theta_symmetric(&self) -> bool {
        let n = self.n();
        let rows = self.omega.row_vectors();
        (0..self.theta.len()).all(|k| {
            (0..n).all(|c| {
                (0..c).all(|b| self.theta_flat(&rows, k, c, b) == self.theta_flat(&rows, k, b, c))
            })
        })
    }
}

/// The `(T₁, T₁, T₁*)` Jacobi identity, for basis vectors `u, v, w`:
/// `Σ_k c_k [θ_k(w*⊗v)u − θ_k(w*⊗u)v] = 2β(v,w)u − 2β(u,w)v − 4β(u,v)w`.
/// The coefficients are solved from enough triples to pin them down and the
/// identity is then checked on every triple.
pub fn solve_l(frame: &mut AdjointFrame) -> Result<(), AdjointError> {
    let n = frame.n();
    let kb = frame.theta.len();
    let beta = frame.beta();
    let rows = frame.omega.row_vectors();
    // ρ(θ_k(e_c*⊗e_b)) for every block and pair.
    let rho: Vec<Vec<RationalMatrix>> = (0..kb)
        .map(|k| {
            (0..n * n)
                .into_par_iter()
                .map(|cb| frame.t1.rho_of(&frame.theta_flat(&rows, k, cb / n, cb % n)))
                .collect()
        })
        .collect();
    let triple = |a: usize, b: usize, c: usize| -> (Vec<SparseVec>, SparseVec) {
        let lhs: Vec<SparseVec> = (0..kb)
            .map(|k| rho[k][c * n + b].column(a).sub(rho[k][c * n + a].column(b)))
            .collect();
        let two = Rational::from_int(2);
        let rhs = SparseVec::unit(a)
            .scale(&(&two * &beta.get(b, c)))
            .sub(&SparseVec::unit(b).scale(&(&two * &beta.get(a, c))))
            .sub(&SparseVec::unit(c).scale(&(Rational::from_int(4) * &beta.get(a, b))));
        (lhs, rhs)
    };
    if kb == 0 {
        return Err(AdjointError::LInconsistent);
    }
    let mut eq = EchelonBuilder::new(kb + 1);
    'fill: for c in 0..n {
        for a in 0..n {
            for b in 0..a {
                let (lhs, rhs) = triple(a, b, c);
                let mut coords: Vec<usize> =
                    lhs.iter().flat_map(|v| v.iter().map(|(i, _)| i)).collect();
                coords.extend(rhs.iter().map(|(i, _)| i));
                coords.sort_unstable();
                coords.dedup();
                for i in coords {
                    let row = SparseVec::from_pairs(
                        lhs.iter()
                            .enumerate()
                            .map(|(k, v)| (k, v.get(i)))
                            .chain(std::iter::once((kb, rhs.get(i)))),
                    );
                    eq.insert(&row);
                }
                if eq.rank() >= kb {
                    break 'fill;
                }
            }
        }
    }
    let rows = eq.finish();
    if rows.iter().any(|r| r.leading().unwrap().0 == kb) || rows.len() != kb {
        return Err(AdjointError::LInconsistent);
    }
    let coeffs: Vec<Rational> = rows.iter().map(|r| r.get(kb)).collect();
    if coeffs.iter().any(|c| c.is_zero()) {
        return Err(AdjointError::LInconsistent);
    }
    let ok = (0..n).into_par_iter().all(|c| {
        (0..n).all(|a| {
            (0..a).all(|b| {
                let (lhs, rhs) = triple(a, b, c);
                let mut acc = SparseVec::new();
                for (k, v) in lhs.iter().enumerate() {
                    acc = acc.add_scaled(&coeffs[k], v);
                }
                acc == rhs
            })
        })
    });
    if !ok {
        return Err(AdjointError::LVerificationFailed);
    }
    frame.coefficients = coeffs;
    Ok(())
}
