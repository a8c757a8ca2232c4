use liecraft_core::repcore::JacobiCertificate;
use serde::{Deserialize, Serialize};

use crate::descriptor::Algorithm;

/// Exact invariants of a constructed algebra used for deduplication.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Fingerprint {
    /// `dim g`, `dim V` and the ladder `dim V_j`.
    Minuscule {
        dim_g: usize,
        dim_v: usize,
        ladder: Vec<usize>,
    },
    /// Graded dimensions `g_{-2}, …, g_2`.
    Adjoint { graded: [usize; 5] },
}

impl Fingerprint {
    pub fn dim_g(&self) -> usize {
        match self {
            Fingerprint::Minuscule { dim_g, .. } => *dim_g,
            Fingerprint::Adjoint { graded } => graded.iter().sum(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// A new fingerprint, archived as `out:<round>/<index>`.
    New {
        index: usize,
    },
    /// Same fingerprint as an earlier output.
    Duplicate {
        of: (usize, usize),
    },
    Inadmissible,
    /// Skipped by a rule known to force inadmissibility; still runnable on
    /// demand.
    Pruned {
        rule: String,
    },
    /// Over a configured size cap.
    Capped {
        reason: String,
    },
    /// An engine abort other than inadmissibility.
    Failed {
        error: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiSummary {
    pub exhaustive: bool,
    pub triples: u64,
    pub passed: bool,
}

impl From<&JacobiCertificate> for JacobiSummary {
    fn from(c: &JacobiCertificate) -> Self {
        JacobiSummary {
            exhaustive: c.exhaustive,
            triples: c.triples_checked,
            passed: c.passed(),
        }
    }
}

impl std::fmt::Display for JacobiSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = if self.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        };
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{kind} {} {verdict}", self.triples)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub round: usize,
    pub algorithm: Algorithm,
    pub descriptor: String,
    pub input_dim: usize,
    pub status: Status,
    pub fingerprint: Option<Fingerprint>,
    pub rank: Option<usize>,
    pub label: Option<String>,
    pub simple: Option<bool>,
    pub jacobi: Option<JacobiSummary>,
    /// Wall-clock milliseconds; kept out of the archive so that runs are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub millis: u128,
}

impl ClassificationRecord {
    pub fn constructed(&self) -> bool {
        matches!(self.status, Status::New { .. } | Status::Duplicate { .. })
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::Failed { .. })
            || self.jacobi.as_ref().is_some_and(|j| !j.passed)
    }
}

/// Dynkin types with the given dimension and rank. Cosmetic only.
pub fn series_label(dim: usize, rank: usize) -> Option<String> {
    let r = rank;
    let mut names = Vec::new();
    if r >= 1 && dim == r * (r + 2) {
        names.push(format!("A{r}"));
    }
    if r >= 2 && dim == r * (2 * r + 1) {
        names.push(format!("B{r}/C{r}"));
    }
    if r >= 4 && dim == r * (2 * r - 1) {
        names.push(format!("D{r}"));
    }
    let exceptional = [
        (14, 2, "G2"),
        (52, 4, "F4"),
        (78, 6, "E6"),
        (133, 7, "E7"),
        (248, 8, "E8"),
    ];
    for (d, k, name) in exceptional {
        if dim == d && r == k {
            names.push(name.to_string());
        }
    }
    (!names.is_empty()).then(|| names.join("/"))
}

/// The series of a label with the rank removed, e.g. `B/C` for `B3/C3`.
pub fn family_of(label: &str) -> String {
    if label.starts_with('E') || label.starts_with('F') || label.starts_with('G') {
        return label.to_string();
    }
    label
        .split('/')
        .map(|p| p.trim_end_matches(|c: char| c.is_ascii_digit()))
        .collect::<Vec<_>>()
        .join("/")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(series_label(8, 2).as_deref(), Some("A2"));
        assert_eq!(series_label(10, 2).as_deref(), Some("B2/C2"));
        assert_eq!(series_label(28, 4).as_deref(), Some("D4"));
        assert_eq!(series_label(120, 10).as_deref(), Some("A10"));
        assert_eq!(series_label(120, 8).as_deref(), Some("D8"));
        assert_eq!(series_label(248, 8).as_deref(), Some("E8"));
        assert_eq!(series_label(14, 2).as_deref(), Some("G2"));
        assert_eq!(series_label(9, 3), None);
        assert_eq!(family_of("B3/C3"), "B/C");
        assert_eq!(family_of("E7"), "E7");
    }
}
