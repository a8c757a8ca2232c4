use std::sync::Arc;

use rayon::prelude::*;

use super::{IdealLadder, MinusculeError, ThetaMap, ThreeGrading};
use crate::exactlin::{
    fischer_weights, symmetric_derivation_apply, symmetric_derivative, symmetric_multiply,
    Accumulator, EchelonBuilder, Rational, RationalMatrix, SparseVec, TensorIndex,
};
use crate::repcore::{LieAlgebra, Representation};

/// Orthogonal projections `S^j T → V_j` for the Fischer form built from the
/// contravariant form of `T`. Each `V_j` gets a basis orthogonalized from
/// its echelon basis, so the form on `V` stays diagonal.
#[derive(Clone, Debug)]
pub struct LadderProjections {
    pub ladder: IdealLadder,
    /// Orthogonal basis of each `V_j` in monomial coefficients.
    pub basis: Vec<Vec<SparseVec>>,
    /// `weighted[j][i]` is the basis vector with the Fischer weights applied.
    weighted: Vec<Vec<SparseVec>>,
    /// Fischer norms of the basis vectors.
    pub norms: Vec<Vec<Rational>>,
}

fn weigh(v: &SparseVec, fis: &[Rational]) -> SparseVec {
    SparseVec::from_sorted(v.iter().map(|(i, x)| (i, x * &fis[i])).collect())
}

impl LadderProjections {
    pub fn new(ladder: &IdealLadder, g: &[Rational]) -> Result<Self, MinusculeError> {
        let levels: Vec<_> = ladder
            .pieces
            .par_iter()
            .enumerate()
            .map(|(j, piece)| {
                let fis = fischer_weights(g, &ladder.index(j));
                let mut basis: Vec<SparseVec> = Vec::with_capacity(piece.dim());
                let mut weighted: Vec<SparseVec> = Vec::with_capacity(piece.dim());
                let mut norms: Vec<Rational> = Vec::with_capacity(piece.dim());
                for b in piece.basis() {
                    let mut v = b.clone();
                    for k in 0..basis.len() {
                        let c = weighted[k].dot(b);
                        if !c.is_zero() {
                            v = v.add_scaled(&-(&c / &norms[k]), &basis[k]);
                        }
                    }
                    let w = weigh(&v, &fis);
                    let norm = w.dot(&v);
                    if norm.is_zero() {
                        return Err(MinusculeError::DegenerateFischer(j));
                    }
                    basis.push(v);
                    weighted.push(w);
                    norms.push(norm);
                }
                Ok((basis, weighted, norms))
            })
            .collect::<Result<_, _>>()?;
        let mut out = LadderProjections {
            ladder: ladder.clone(),
            basis: vec![],
            weighted: vec![],
            norms: vec![],
        };
        for (b, w, n) in levels {
            out.basis.push(b);
            out.weighted.push(w);
            out.norms.push(n);
        }
        Ok(out)
    }

    /// Vector of `S^j T` for `V_j` coordinates.
    pub fn lift(&self, j: usize, coords: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.ladder.index(j).dim());
        for (i, c) in coords.iter() {
            acc.add_scaled(c, &self.basis[j][i]);
        }
        acc.take()
    }

    /// Orthogonal projection of an `S^j T` vector, in `V_j` coordinates.
    pub fn project(&self, j: usize, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(
            self.weighted[j]
                .iter()
                .zip(&self.norms[j])
                .enumerate()
                .filter_map(|(i, (w, n))| {
                    let c = w.dot(v);
                    (!c.is_zero()).then(|| (i, &c / n))
                })
                .collect(),
        )
    }

    /// Coordinates of `v`, which must lie in `V_j`.
    pub fn coordinates(&self, j: usize, v: &SparseVec) -> Option<SparseVec> {
        let c = self.project(j, v);
        (self.lift(j, &c) == *v).then_some(c)
    }
}

/// The `g`-module `V = ⊕ V_j` with its solved constants.
#[derive(Clone, Debug)]
pub struct LadderModule {
    pub rep: Representation,
    /// Scalar of the center on `V_0`; it acts by `c0 + j` on `V_j`.
    pub c0: Rational,
    /// `kappa[j-1]` scales the raising operator `V_{j-1} → V_j`.
    pub kappa: Vec<Rational>,
    pub projections: LadderProjections,
}

struct Level<'a> {
    proj: &'a LadderProjections,
    n: usize,
}

impl Level<'_> {
    fn idx(&self, j: usize) -> TensorIndex {
        TensorIndex::symmetric(self.n, j)
    }

    fn dim(&self, j: usize) -> usize {
        self.proj.ladder.pieces.get(j).map_or(0, |p| p.dim())
    }

    fn basis(&self, j: usize) -> &[SparseVec] {
        &self.proj.basis[j]
    }

    /// Coordinates of `∂_a p_i` in `V_{j-1}`, with a membership check.
    fn lower(&self, j: usize, i: usize, a: usize) -> Result<SparseVec, MinusculeError> {
        let d = symmetric_derivative(&self.basis(j)[i], a, &self.idx(j), &self.idx(j - 1));
        self.coords(j - 1, &d)
    }

    /// `π_{j+1}(x_a p_i)` in `V_{j+1}` coordinates (without κ).
    fn raise(&self, j: usize, i: usize, a: usize) -> SparseVec {
        let m = symmetric_multiply(&self.basis(j)[i], a, &self.idx(j), &self.idx(j + 1));
        self.proj.project(j + 1, &m)
    }

    fn coords(&self, j: usize, v: &SparseVec) -> Result<SparseVec, MinusculeError> {
        self.proj
            .coordinates(j, v)
            .ok_or(MinusculeError::LadderNotInvariant(j))
    }

    fn derivation(
        &self,
        j: usize,
        i: usize,
        a: &RationalMatrix,
    ) -> Result<SparseVec, MinusculeError> {
        let w = symmetric_derivation_apply(a, &self.basis(j)[i], &self.idx(j));
        self.coords(j, &w)
    }
}

/// Builds the action of `g = T* ⊕ h ⊕ C ⊕ T` on `V`: `h` by derivation,
/// `e_a*` by `∂_a`, `e_b` by `κ_{j+1} π_{j+1}(x_b ·)` and the center by
/// `c0 + j`. The unknowns `c0, κ` come from `[e_a*, e_a] = 1 + s θ_aa` on
/// every level; the full homomorphism property is then verified.
pub fn build_module_action(
    g: Arc<LieAlgebra>,
    gr: &ThreeGrading,
    t: &Representation,
    th: &ThetaMap,
    ladder: &IdealLadder,
    label: &str,
) -> Result<LadderModule, MinusculeError> {
    let n = t.module_dim();
    let d = ladder.degree();
    let projections = LadderProjections::new(ladder, t.contravariant())?;
    let lv = Level {
        proj: &projections,
        n,
    };
    let rho_theta: Vec<RationalMatrix> = (0..n)
        .map(|a| t.rho_of(&th.get(a, a).scale(&th.scale)))
        .collect();

    // Unknowns: 0 = c0, 1..=d = κ_1..κ_d, d+1 = right-hand side.
    let unknowns = d + 1;
    let mut eq = EchelonBuilder::new(unknowns + 1);
    for j in 0..=d {
        let dim_j = lv.dim(j);
        for a in 0..n {
            for i in 0..dim_j {
                // κ_{j+1} ∂_a π(x_a p) − κ_j π(x_a ∂_a p) − (c0 + j) p = s ρ(θ_aa) p
                let up = if j < d {
                    let r = lv.raise(j, i, a);
                    let lifted = projections.lift(j + 1, &r);
                    let back = symmetric_derivative(&lifted, a, &lv.idx(j + 1), &lv.idx(j));
                    lv.coords(j, &back)?
                } else {
                    SparseVec::new()
                };
                let down = if j > 0 {
                    let low = lv.lower(j, i, a)?;
                    let lifted = projections.lift(j - 1, &low);
                    let m = symmetric_multiply(&lifted, a, &lv.idx(j - 1), &lv.idx(j));
                    projections.project(j, &m)
                } else {
                    SparseVec::new()
                };
                let rhs = lv.derivation(j, i, &rho_theta[a])?;
                for k in 0..dim_j {
                    let mut row = Vec::new();
                    if k == i {
                        row.push((0, -Rational::one()));
                    }
                    if j < d {
                        row.push((j + 1, up.get(k)));
                    }
                    if j > 0 {
                        row.push((j, -down.get(k)));
                    }
                    let mut r = rhs.get(k);
                    if k == i {
                        r += &Rational::from_int(j as i64);
                    }
                    row.push((unknowns, r));
                    let row = SparseVec::from_pairs(row);
                    if !row.is_zero() {
                        eq.insert(&row);
                    }
                }
            }
        }
    }
    // Full column rank with a consistent right-hand side pins down a
    // unique solution, read off the reduced rows.
    let rows = eq.finish();
    if rows.iter().any(|r| r.leading().unwrap().0 == unknowns) {
        return Err(MinusculeError::RaisingInconsistent);
    }
    if rows.len() != unknowns {
        return Err(MinusculeError::RaisingUnderdetermined);
    }
    let sol = SparseVec::from_pairs(
        rows.iter()
            .map(|r| (r.leading().unwrap().0, r.get(unknowns))),
    );
    let c0 = sol.get(0);
    let kappa: Vec<Rational> = (1..=d).map(|j| sol.get(j)).collect();
    if kappa.iter().any(|k| k.is_zero()) {
        return Err(MinusculeError::RaisingInconsistent);
    }

    // Assemble the action matrices.
    let total = ladder.total_dim();
    let offs: Vec<usize> = (0..=d).map(|j| ladder.offset(j)).collect();
    let h_dim = t.algebra().dim();
    let build = |f: &(dyn Fn(usize, usize) -> Result<Option<(usize, SparseVec)>, MinusculeError>
                       + Sync)| {
        let mut cols = Vec::with_capacity(total);
        for j in 0..=d {
            for i in 0..lv.dim(j) {
                cols.push(match f(j, i)? {
                    None => SparseVec::new(),
                    Some((jj, v)) => v.shifted(offs[jj]),
                });
            }
        }
        Ok::<_, MinusculeError>(RationalMatrix::from_columns(total, cols))
    };
    let lowering: Vec<RationalMatrix> = (0..n)
        .into_par_iter()
        .map(|a| {
            build(&|j, i| {
                if j == 0 {
                    Ok(None)
                } else {
                    lv.lower(j, i, a).map(|v| Some((j - 1, v)))
                }
            })
        })
        .collect::<Result<_, _>>()?;
    let h_action: Vec<RationalMatrix> = (0..h_dim)
        .into_par_iter()
        .map(|x| build(&|j, i| lv.derivation(j, i, t.rho(x)).map(|v| Some((j, v)))))
        .collect::<Result<_, _>>()?;
    let center = build(&|j, i| {
        Ok(Some((
            j,
            SparseVec::unit(i).scale(&(&c0 + &Rational::from_int(j as i64))),
        )))
    })?;
    let raising: Vec<RationalMatrix> = (0..n)
        .into_par_iter()
        .map(|a| {
            build(&|j, i| {
                Ok(if j == d {
                    None
                } else {
                    Some((j + 1, lv.raise(j, i, a).scale(&kappa[j])))
                })
            })
        })
        .collect::<Result<_, _>>()?;
    let mut action = Vec::with_capacity(gr.dim());
    action.extend(lowering);
    action.extend(h_action);
    action.push(center);
    action.extend(raising);

    // Contravariant form: level j scaled by s_j with s_{j+1} = s_j / |κ_{j+1}|,
    // which needs all κ of one sign.
    let sign_neg = kappa[0].is_negative();
    if kappa.iter().any(|k| k.is_negative() != sign_neg) {
        return Err(MinusculeError::MixedRaisingSigns);
    }
    let mut gv = Vec::with_capacity(total);
    let mut s = Rational::one();
    for j in 0..=d {
        if j > 0 {
            s = &s / &kappa[j - 1].abs();
        }
        gv.extend(projections.norms[j].iter().map(|x| &s * x));
    }
    let rep = Representation::with_dim(g, total, action, Some(SparseVec::unit(0)), label)?
        .with_contravariant(gv);
    if let Some((i, j)) = rep.homomorphism_violation() {
        return Err(MinusculeError::ModuleNotHomomorphism(i, j));
    }
    Ok(LadderModule {
        rep,
        c0,
        kappa,
        projections,
    })
}
