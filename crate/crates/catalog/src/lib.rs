//! Classification driver: enumerate inputs round by round, run both
//! engines, deduplicate by exact fingerprints, archive and report.

pub mod archive;
pub mod build;
pub mod classify;
pub mod descriptor;
pub mod record;
pub mod report;
pub mod verify;

pub use archive::{AlgebraArchive, ArchiveError, ClassifyConfig};
pub use classify::{classify, classify_with_progress, enumerate_candidates, run_round, Candidate};
pub use descriptor::{Algorithm, Descriptor, ParseError};
pub use record::{ClassificationRecord, Fingerprint, Status};
pub use report::{build_report, render, Format, Report};
pub use verify::{verify, CertificateBundle, Level};
