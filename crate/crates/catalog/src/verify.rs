use std::collections::BTreeMap;
use std::sync::Arc;

use liecraft_core::exactlin::{Rational, RationalMatrix};
use liecraft_core::minuscule::{JACOBI_FULL_CAP, JACOBI_SAMPLES};
use liecraft_core::repcore::{JacobiCertificate, JacobiMode, LieAlgebra};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::archive::{AlgebraArchive, ArchivedOutput};
use crate::record::Fingerprint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

/// Triples sampled per algebra at the quick level.
pub const QUICK_SAMPLES: u64 = 2_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputCertificate {
    pub output: String,
    pub dim: usize,
    pub jacobi: Option<JacobiCertificate>,
    /// First pair `(i, j)` with `ρ[x_i, x_j] ≠ [ρx_i, ρx_j]`.
    pub homomorphism_violation: Option<(usize, usize)>,
    /// Eigenvalue multiplicities of the grading element, ascending.
    pub recomputed_grading: Option<Vec<usize>>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub level: Level,
    pub certificates: Vec<OutputCertificate>,
}

impl CertificateBundle {
    pub fn failures(&self) -> Vec<&String> {
        self.certificates
            .iter()
            .flat_map(|c| c.failures.iter())
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.failures.is_empty())
    }

    pub fn exhaustive_triples(&self) -> u64 {
        self.certificates
            .iter()
            .filter_map(|c| c.jacobi.as_ref())
            .filter(|j| j.exhaustive)
            .map(|j| j.triples_checked)
            .sum()
    }
}

fn jacobi_mode(dim: usize, level: Level, seed: u64) -> JacobiMode {
    match level {
        Level::Full if dim <= JACOBI_FULL_CAP => JacobiMode::Full,
        Level::Full => JacobiMode::Sampled {
            triples: JACOBI_SAMPLES,
            seed,
        },
        Level::Quick => JacobiMode::Sampled {
            triples: QUICK_SAMPLES,
            seed,
        },
    }
}

/// Multiplicities of the diagonal of a matrix in ascending order of the
/// value, or `None` if it is not diagonal.
fn diagonal_multiplicities(m: &RationalMatrix) -> Option<Vec<usize>> {
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for j in 0..m.cols() {
        let col = m.column(j);
        if col.iter().any(|(i, _)| i != j) {
            return None;
        }
        *counts.entry(col.get(j)).or_default() += 1;
    }
    Some(counts.into_values().collect())
}

pub fn verify_output(o: &ArchivedOutput, level: Level) -> OutputCertificate {
    let name = format!("out:{}/{}", o.round, o.index);
    let mut cert = OutputCertificate {
        output: name.clone(),
        dim: o.algebra.dim,
        jacobi: None,
        homomorphism_violation: None,
        recomputed_grading: None,
        failures: Vec::new(),
    };
    let g = match o.algebra.to_algebra() {
        Ok(g) => Arc::new(g),
        Err(e) => {
            cert.failures
                .push(format!("{name}: algebra does not load: {e}"));
            return cert;
        }
    };
    let seed = 0xa11 + (o.round as u64) * 1000 + o.index as u64;
    let jac = g.verify_jacobi(jacobi_mode(g.dim(), level, seed));
    if let Some((i, j, k)) = jac.violation {
        cert.failures.push(format!(
            "{name}: Jacobi identity fails on basis triple ({i}, {j}, {k})"
        ));
    }
    cert.jacobi = Some(jac);
    match &o.fingerprint {
        Fingerprint::Minuscule { ladder, .. } => check_module(o, &g, ladder, &mut cert),
        Fingerprint::Adjoint { graded } => {
            if o.grading_element >= g.dim() {
                cert.failures
                    .push(format!("{name}: grading element out of range"));
                return cert;
            }
            let found = diagonal_multiplicities(g.ad(o.grading_element));
            if found.as_deref() != Some(&graded[..]) {
                cert.failures.push(format!(
                    "{name}: graded dims recomputed as {found:?}, recorded {graded:?}"
                ));
            }
            cert.recomputed_grading = found;
        }
    }
    cert
}

fn check_module(
    o: &ArchivedOutput,
    g: &Arc<LieAlgebra>,
    ladder: &[usize],
    cert: &mut OutputCertificate,
) {
    let name = cert.output.clone();
    let Some(data) = &o.module else {
        cert.failures.push(format!("{name}: module missing"));
        return;
    };
    let rep = match data.to_rep(g.clone()) {
        Ok(r) => r,
        Err(e) => {
            cert.failures
                .push(format!("{name}: module does not load: {e}"));
            return;
        }
    };
    cert.homomorphism_violation = rep.homomorphism_violation();
    if let Some((i, j)) = cert.homomorphism_violation {
        cert.failures.push(format!(
            "{name}: module action fails the bracket on basis pair ({i}, {j})"
        ));
    }
    if o.grading_element >= g.dim() {
        cert.failures
            .push(format!("{name}: grading element out of range"));
        return;
    }
    let found = diagonal_multiplicities(rep.rho(o.grading_element));
    if found.as_deref() != Some(ladder) {
        cert.failures.push(format!(
            "{name}: ladder recomputed as {found:?}, recorded {ladder:?}"
        ));
    }
    cert.recomputed_grading = found;
}

pub fn verify(archive: &AlgebraArchive, level: Level) -> CertificateBundle {
    let certificates = archive
        .outputs
        .par_iter()
        .map(|o| verify_output(o, level))
        .collect();
    CertificateBundle {
        level,
        certificates,
    }
}
