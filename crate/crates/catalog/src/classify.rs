use std::time::Instant;

use liecraft_core::adjoint::{
    run_adjoint, special_case_a, special_case_c, AdjointError, AdjointOutput,
};
use liecraft_core::minuscule::{run_minuscule_capped, MinusculeError};
use rayon::prelude::*;

use crate::archive::{
    AlgebraArchive, AlgebraData, ArchiveError, ArchivedOutput, ClassifyConfig, ModuleData,
};
use crate::build::{build, orbit_dim, provenance, shape, Shape};
use crate::descriptor::{Algorithm, Descriptor};
use crate::record::{series_label, ClassificationRecord, Fingerprint, JacobiSummary, Status};

/// A descriptor to evaluate, or one skipped by a pruning rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub descriptor: Descriptor,
    pub algorithm: Algorithm,
    pub pruned: Option<String>,
}

pub const SEGRE_RULE: &str = "Segre factor is not a projective space";
pub const ADJOINT_RULE: &str =
    "neither Legendrian dimension count nor a whole projective space of even dimension";

/// Factors available in `round`: the bootstrap line and every minuscule
/// output of earlier rounds. The second value is where the factors new in
/// the previous round start.
fn factor_pool(archive: &AlgebraArchive, round: usize) -> (Vec<Descriptor>, usize) {
    let mut pool = vec![Descriptor::P1];
    let mut fresh = 0;
    for o in &archive.outputs {
        if o.round < round && o.module.is_some() {
            if o.round + 1 == round && fresh == 0 {
                fresh = pool.len();
            }
            pool.push(Descriptor::out(o.round, o.index));
        }
    }
    if round > 1 && fresh == 0 {
        fresh = pool.len();
    }
    (pool, fresh)
}

/// Candidates of a round, each using at least one factor new in the
/// previous round (the bootstrap counts as new in round 1), within the
/// degree and product bounds of the algorithm and the wedge cap.
pub fn enumerate_candidates(
    archive: &AlgebraArchive,
    round: usize,
    algorithm: Algorithm,
) -> Result<Vec<Candidate>, ArchiveError> {
    let (pool, fresh) = factor_pool(archive, round);
    let shapes = pool
        .iter()
        .map(|d| shape(d, archive))
        .collect::<Result<Vec<_>, _>>()?;
    let n = pool.len();
    let mut descs = Vec::new();
    let max_degree = match algorithm {
        Algorithm::Minuscule => 2,
        Algorithm::Adjoint => 3,
    };
    for i in fresh..n {
        descs.push(pool[i].clone());
        for d in 2..=max_degree {
            descs.push(Descriptor::veronese(d, pool[i].clone()));
        }
    }
    for j in fresh..n {
        for i in 0..=j {
            descs.push(Descriptor::segre(vec![pool[i].clone(), pool[j].clone()]));
        }
    }
    if algorithm == Algorithm::Adjoint {
        for x in 0..n {
            for y in 0..n {
                if x.max(y) >= fresh {
                    descs.push(Descriptor::segre(vec![
                        Descriptor::veronese(2, pool[x].clone()),
                        pool[y].clone(),
                    ]));
                }
            }
        }
        for k in fresh..n {
            for j in 0..=k {
                for i in 0..=j {
                    descs.push(Descriptor::segre(vec![
                        pool[i].clone(),
                        pool[j].clone(),
                        pool[k].clone(),
                    ]));
                }
            }
        }
        if round == 1 {
            descs.extend((2..=4).map(Descriptor::SeriesA));
            descs.extend((3..=4).map(Descriptor::SeriesC));
        }
    } else if round == 1 {
        // One step outside the bounds, kept as negative checks.
        descs.push(Descriptor::veronese(3, Descriptor::P1));
        descs.push(Descriptor::segre(vec![Descriptor::P1; 3]));
    }
    let factor_shape = |d: &Descriptor| pool.iter().position(|p| p == d).map(|i| shapes[i]);
    let mut out = Vec::new();
    for d in descs {
        let s = shape(&d, archive)?;
        if s.wedge_dim() > archive.config.max_wedge_dim {
            continue;
        }
        let pruned = match (algorithm, &d) {
            (Algorithm::Minuscule, Descriptor::Segre(fs))
                if fs
                    .iter()
                    .any(|f| !factor_shape(f).is_some_and(|s| s.is_projective_space())) =>
            {
                Some(SEGRE_RULE.to_string())
            }
            (Algorithm::Adjoint, Descriptor::SeriesA(_) | Descriptor::SeriesC(_)) => None,
            (Algorithm::Adjoint, _) if !adjoint_dimension_ok(&s) => Some(ADJOINT_RULE.to_string()),
            _ => None,
        };
        out.push(Candidate {
            descriptor: d,
            algorithm,
            pruned,
        });
    }
    Ok(out)
}

fn adjoint_dimension_ok(s: &Shape) -> bool {
    s.dim.is_multiple_of(2) && (s.is_legendrian_count() || s.is_projective_space())
}

/// What one evaluation produced, before deduplication.
struct Evaluation {
    record: ClassificationRecord,
    output: Option<(Fingerprint, AlgebraData, Option<ModuleData>, usize, usize)>,
}

fn blank_record(round: usize, c: &Candidate, s: &Shape) -> ClassificationRecord {
    ClassificationRecord {
        round,
        algorithm: c.algorithm,
        descriptor: c.descriptor.to_string(),
        input_dim: s.dim,
        status: Status::Inadmissible,
        fingerprint: None,
        rank: None,
        label: None,
        simple: None,
        jacobi: None,
        millis: 0,
    }
}

fn evaluate(archive: &AlgebraArchive, round: usize, c: &Candidate) -> Evaluation {
    let start = Instant::now();
    let s =
        shape(&c.descriptor, archive).expect("candidate shapes were computed during enumeration");
    let mut record = blank_record(round, c, &s);
    let mut output = None;
    if let Some(rule) = &c.pruned {
        record.status = Status::Pruned { rule: rule.clone() };
        return Evaluation { record, output };
    }
    let label = c.descriptor.to_string();
    let rank = s.rank + 1;
    match c.algorithm {
        Algorithm::Minuscule => {
            let result = build(&c.descriptor, archive)
                .map_err(|e| Status::Failed {
                    error: e.to_string(),
                })
                .and_then(|t| {
                    run_minuscule_capped(&t, &label, archive.config.monomial_cap)
                        .map_err(minuscule_status)
                });
            match result {
                Ok(out) => {
                    let fp = Fingerprint::Minuscule {
                        dim_g: out.algebra.dim(),
                        dim_v: out.module.rep.module_dim(),
                        ladder: out.ladder.dims(),
                    };
                    record.fingerprint = Some(fp.clone());
                    record.rank = Some(rank);
                    record.label = series_label(out.algebra.dim(), rank);
                    record.simple = Some(out.simple);
                    record.jacobi = Some(JacobiSummary::from(&out.jacobi));
                    let module = ModuleData::from_rep(&out.module.rep);
                    output = Some((
                        fp,
                        AlgebraData::from_algebra(&out.algebra),
                        Some(module),
                        orbit_dim(&out.module.rep),
                        out.grading.center,
                    ));
                }
                Err(status) => record.status = status,
            }
        }
        Algorithm::Adjoint => match run_adjoint_descriptor(&c.descriptor, archive) {
            Ok(out) => {
                let fp = Fingerprint::Adjoint {
                    graded: out.grading.dims(),
                };
                record.fingerprint = Some(fp.clone());
                record.rank = Some(rank);
                record.label = series_label(out.dim(), rank);
                record.simple = Some(out.simple);
                record.jacobi = Some(JacobiSummary::from(&out.jacobi));
                output = Some((
                    fp,
                    AlgebraData::from_algebra(&out.algebra),
                    None,
                    0,
                    out.grading.center,
                ));
            }
            Err(status) => record.status = status,
        },
    }
    record.millis = start.elapsed().as_millis();
    Evaluation { record, output }
}

fn minuscule_status(e: MinusculeError) -> Status {
    match e {
        MinusculeError::Inadmissible => Status::Inadmissible,
        e @ MinusculeError::ProlongationTooLarge { .. } => Status::Capped {
            reason: e.to_string(),
        },
        other => Status::Failed {
            error: other.to_string(),
        },
    }
}

/// Runs the adjoint engine on a descriptor, including the special series.
pub fn run_adjoint_descriptor(
    d: &Descriptor,
    archive: &AlgebraArchive,
) -> Result<AdjointOutput, Status> {
    let label = d.to_string();
    let result = match d {
        Descriptor::SeriesA(k) => special_case_a(*k),
        Descriptor::SeriesC(m) => special_case_c(*m),
        _ => {
            let t = build(d, archive).map_err(|e| Status::Failed {
                error: e.to_string(),
            })?;
            run_adjoint(&t, &label)
        }
    };
    result.map_err(|e| match e {
        AdjointError::Inadmissible => Status::Inadmissible,
        other => Status::Failed {
            error: other.to_string(),
        },
    })
}

/// Evaluates every candidate of one round for both algorithms and appends
/// the records and new outputs to the archive. Returns the new records.
pub fn run_round(
    archive: &mut AlgebraArchive,
    round: usize,
) -> Result<Vec<ClassificationRecord>, ArchiveError> {
    let mut candidates = enumerate_candidates(archive, round, Algorithm::Minuscule)?;
    candidates.extend(enumerate_candidates(archive, round, Algorithm::Adjoint)?);
    let snapshot: &AlgebraArchive = archive;
    let evaluations: Vec<Evaluation> = candidates
        .par_iter()
        .map(|c| evaluate(snapshot, round, c))
        .collect();
    let mut index = 0;
    let mut records = Vec::with_capacity(evaluations.len());
    let mut new_outputs = Vec::new();
    for Evaluation { mut record, output } in evaluations {
        if let Some((fp, algebra, module, orbit, grading_element)) = output {
            let prior = archive
                .outputs
                .iter()
                .chain(new_outputs.iter())
                .find(|o: &&ArchivedOutput| o.fingerprint == fp)
                .map(|o| (o.round, o.index));
            record.status = match prior {
                Some(of) => Status::Duplicate { of },
                None => {
                    let d: Descriptor = record
                        .descriptor
                        .parse()
                        .expect("descriptors print in the grammar");
                    new_outputs.push(ArchivedOutput {
                        round,
                        index,
                        algorithm: record.algorithm,
                        descriptor: record.descriptor.clone(),
                        provenance: provenance(&d, archive),
                        rank: record.rank.unwrap_or(0),
                        label: record.label.clone(),
                        orbit_dim: orbit,
                        grading_element,
                        fingerprint: fp,
                        algebra,
                        module,
                    });
                    index += 1;
                    Status::New { index: index - 1 }
                }
            };
        }
        records.push(record);
    }
    archive.outputs.extend(new_outputs);
    archive.records.extend(records.iter().cloned());
    Ok(records)
}

/// All rounds of the configuration from an empty archive.
pub fn classify(config: ClassifyConfig) -> Result<AlgebraArchive, ArchiveError> {
    classify_with_progress(config, |_, _| {})
}

pub fn classify_with_progress(
    config: ClassifyConfig,
    mut progress: impl FnMut(usize, &[ClassificationRecord]),
) -> Result<AlgebraArchive, ArchiveError> {
    let mut archive = AlgebraArchive::new(config);
    for round in 1..=archive.config.rounds {
        let records = run_round(&mut archive, round)?;
        progress(round, &records);
    }
    Ok(archive)
}
