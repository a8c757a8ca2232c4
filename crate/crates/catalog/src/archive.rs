use std::sync::Arc;

use liecraft_core::exactlin::{Rational, RationalMatrix, SparseVec};
use liecraft_core::repcore::{LieAlgebra, Representation};
use serde::{Deserialize, Serialize};

use crate::record::ClassificationRecord;

pub const SCHEMA_VERSION: u32 = 1;

/// A rational as decimal numerator and denominator strings.
pub type RationalPair = (String, String);

#[derive(Debug, thiserror::Error)]
pub enum ArchiveError {
    #[error("malformed rational {0:?}/{1:?}")]
    Rational(String, String),
    #[error("index out of range in {0}")]
    Index(&'static str),
    #[error("unknown output reference out:{0}/{1}")]
    MissingOutput(usize, usize),
    #[error("schema version {0} is not supported")]
    Version(u32),
    #[error(transparent)]
    Rep(#[from] liecraft_core::repcore::RepError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn encode(x: &Rational) -> RationalPair {
    (x.numer().to_string(), x.denom().to_string())
}

pub fn decode(p: &RationalPair) -> Result<Rational, ArchiveError> {
    let bad = || ArchiveError::Rational(p.0.clone(), p.1.clone());
    if p.1.starts_with(['-', '+']) || p.0.contains('/') || p.1.contains('/') {
        return Err(bad());
    }
    format!("{}/{}", p.0, p.1).parse().map_err(|_| bad())
}

fn encode_vec(v: &SparseVec) -> Vec<(usize, String, String)> {
    v.iter()
        .map(|(i, x)| {
            let (n, d) = encode(x);
            (i, n, d)
        })
        .collect()
}

fn decode_vec(v: &[(usize, String, String)]) -> Result<SparseVec, ArchiveError> {
    let pairs = v
        .iter()
        .map(|(i, n, d)| Ok((*i, decode(&(n.clone(), d.clone()))?)))
        .collect::<Result<Vec<_>, ArchiveError>>()?;
    Ok(SparseVec::from_pairs(pairs))
}

/// Structure constants `[x_i, x_j] = Σ c x_k` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub label: String,
    pub dim: usize,
    pub constants: Vec<(usize, usize, usize, String, String)>,
}

impl AlgebraData {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let constants = g
            .structure_triplets()
            .map(|(i, j, k, x)| {
                let (n, d) = encode(x);
                (i, j, k, n, d)
            })
            .collect();
        AlgebraData {
            label: g.label().to_string(),
            dim: g.dim(),
            constants,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, ArchiveError> {
        let mut brackets: std::collections::BTreeMap<(usize, usize), Vec<(usize, Rational)>> =
            Default::default();
        for (i, j, k, n, d) in &self.constants {
            if *i >= *j || *j >= self.dim || *k >= self.dim {
                return Err(ArchiveError::Index("structure constants"));
            }
            brackets
                .entry((*i, *j))
                .or_default()
                .push((*k, decode(&(n.clone(), d.clone()))?));
        }
        Ok(LieAlgebra::from_brackets(
            self.dim,
            brackets
                .into_iter()
                .map(|((i, j), v)| (i, j, SparseVec::from_pairs(v))),
            self.label.clone(),
        ))
    }
}

/// A module over an archived algebra: one sparse matrix per basis element
/// as `(row, column, value)` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub label: String,
    pub dim: usize,
    pub action: Vec<Vec<(usize, usize, String, String)>>,
    pub extreme: Vec<(usize, String, String)>,
    pub contravariant: Vec<RationalPair>,
}

impl ModuleData {
    pub fn from_rep(r: &Representation) -> Self {
        let action = r
            .action()
            .iter()
            .map(|m| {
                m.triplets()
                    .map(|(i, j, x)| {
                        let (n, d) = encode(x);
                        (i, j, n, d)
                    })
                    .collect()
            })
            .collect();
        ModuleData {
            label: r.label().to_string(),
            dim: r.module_dim(),
            action,
            extreme: r.extreme().map(encode_vec).unwrap_or_default(),
            contravariant: r.contravariant().iter().map(encode).collect(),
        }
    }

    pub fn to_rep(&self, algebra: Arc<LieAlgebra>) -> Result<Representation, ArchiveError> {
        let n = self.dim;
        let action = self
            .action
            .iter()
            .map(|m| {
                let t = m
                    .iter()
                    .map(|(i, j, a, b)| {
                        if *i >= n || *j >= n {
                            return Err(ArchiveError::Index("action matrix"));
                        }
                        Ok((*i, *j, decode(&(a.clone(), b.clone()))?))
                    })
                    .collect::<Result<Vec<_>, ArchiveError>>()?;
                Ok(RationalMatrix::from_triplets(n, n, t))
            })
            .collect::<Result<Vec<_>, ArchiveError>>()?;
        let extreme = decode_vec(&self.extreme)?;
        if extreme.max_index().is_some_and(|m| m >= n) {
            return Err(ArchiveError::Index("extreme vector"));
        }
        let extreme = (!extreme.is_zero()).then_some(extreme);
        let rep = Representation::with_dim(algebra, n, action, extreme, self.label.clone())?;
        let form = self
            .contravariant
            .iter()
            .map(decode)
            .collect::<Result<Vec<_>, _>>()?;
        if form.len() != n || form.iter().any(Rational::is_zero) {
            return Err(ArchiveError::Index("contravariant form"));
        }
        Ok(rep.with_contravariant(form))
    }
}

/// A constructed algebra kept for later rounds and for verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchivedOutput {
    pub round: usize,
    pub index: usize,
    pub algorithm: crate::descriptor::Algorithm,
    pub descriptor: String,
    /// Descriptors of every output this one was built from, outermost
    /// first, ending at the bootstrap.
    pub provenance: Vec<String>,
    pub rank: usize,
    pub label: Option<String>,
    /// Dimension of the closed orbit in `P(V)`.
    pub orbit_dim: usize,
    /// Basis index of the grading element.
    pub grading_element: usize,
    pub fingerprint: crate::record::Fingerprint,
    pub algebra: AlgebraData,
    /// The new module `V`; absent for adjoint outputs.
    pub module: Option<ModuleData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub rounds: usize,
    pub max_wedge_dim: usize,
    pub monomial_cap: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            rounds: 8,
            max_wedge_dim: 1600,
            monomial_cap: liecraft_core::minuscule::PROLONGATION_MONOMIAL_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraArchive {
    pub schema_version: u32,
    pub config: ClassifyConfig,
    pub records: Vec<ClassificationRecord>,
    pub outputs: Vec<ArchivedOutput>,
}

impl AlgebraArchive {
    pub fn new(config: ClassifyConfig) -> Self {
        AlgebraArchive {
            schema_version: SCHEMA_VERSION,
            config,
            records: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn output(&self, round: usize, index: usize) -> Option<&ArchivedOutput> {
        self.outputs
            .iter()
            .find(|o| o.round == round && o.index == index)
    }

    pub fn outputs_of_round(&self, round: usize) -> impl Iterator<Item = &ArchivedOutput> {
        self.outputs.iter().filter(move |o| o.round == round)
    }

    pub fn completed_rounds(&self) -> usize {
        self.records.iter().map(|r| r.round).max().unwrap_or(0)
    }

    /// The module of a minuscule output, rebuilt over its algebra.
    pub fn module_of(&self, round: usize, index: usize) -> Result<Representation, ArchiveError> {
        let out = self
            .output(round, index)
            .ok_or(ArchiveError::MissingOutput(round, index))?;
        let module = out
            .module
            .as_ref()
            .ok_or(ArchiveError::MissingOutput(round, index))?;
        module.to_rep(Arc::new(out.algebra.to_algebra()?))
    }

    pub fn to_json(&self) -> Result<String, ArchiveError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self, ArchiveError> {
        let a: AlgebraArchive = serde_json::from_str(s)?;
        if a.schema_version != SCHEMA_VERSION {
            return Err(ArchiveError::Version(a.schema_version));
        }
        Ok(a)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ArchiveError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), ArchiveError> {
        Ok(std::fs::write(path, self.to_json()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use liecraft_core::repcore::sl_standard;

    #[test]
    fn rational_encoding() {
        for x in [
            Rational::new(-3, 7),
            Rational::zero(),
            Rational::from_int(i64::MAX),
        ] {
            assert_eq!(decode(&encode(&x)).unwrap(), x);
        }
        assert!(decode(&("1".into(), "0".into())).is_err());
        assert!(decode(&("1".into(), "-2".into())).is_err());
        assert!(decode(&("x".into(), "2".into())).is_err());
    }

    #[test]
    fn algebra_and_module_round_trip() {
        let r = sl_standard(3).symmetric_power(2);
        let g = AlgebraData::from_algebra(r.algebra());
        let back = g.to_algebra().unwrap();
        assert_eq!(&back, r.algebra());
        let m = ModuleData::from_rep(&r);
        let rep = m.to_rep(Arc::new(back)).unwrap();
        assert_eq!(rep.action(), r.action());
        assert_eq!(rep.extreme(), r.extreme());
        assert_eq!(ModuleData::from_rep(&rep), m);
    }
}
