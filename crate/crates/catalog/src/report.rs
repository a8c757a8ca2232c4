use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::archive::AlgebraArchive;
use crate::descriptor::{Algorithm, Descriptor};
use crate::record::{family_of, Fingerprint, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Markdown,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusculeRow {
    pub round: usize,
    pub output: String,
    pub input: String,
    pub input_dim: usize,
    pub dim_g: usize,
    pub dim_v: usize,
    pub ladder: Vec<usize>,
    pub label: String,
    pub jacobi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointRow {
    pub round: usize,
    pub output: String,
    pub input: String,
    pub input_dim: usize,
    pub graded: [usize; 5],
    pub dim_g: usize,
    pub label: String,
    pub jacobi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRow {
    pub round: usize,
    pub candidates: usize,
    pub pruned: usize,
    pub inadmissible: usize,
    pub capped: usize,
    pub failed: usize,
    pub duplicates: usize,
    pub new_minuscule: usize,
    pub new_adjoint: usize,
    /// Minuscule families seen for the first time in this round.
    pub new_families: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    /// The last two rounds add no new minuscule fingerprint.
    pub literal: bool,
    /// The last two rounds add no new minuscule family.
    pub family_level: bool,
    pub last_rounds: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub minuscule: Vec<MinusculeRow>,
    pub adjoint: Vec<AdjointRow>,
    pub rounds: Vec<RoundRow>,
    pub stabilization: Option<Stabilization>,
}

/// A family groups outputs by the type of `g` and the shape of the input,
/// with each factor replaced by its own type: `A <- seg(A,A)` covers every
/// Grassmannian from a product of two projective spaces.
pub fn family_key(archive: &AlgebraArchive, descriptor: &str, label: Option<&str>) -> String {
    let factor = |d: &Descriptor| match d {
        Descriptor::P1 => "A".to_string(),
        Descriptor::Out { round, index } => archive
            .output(*round, *index)
            .and_then(|o| o.label.as_deref())
            .map(family_of)
            .unwrap_or_else(|| "?".into()),
        other => other.to_string(),
    };
    let shape = match descriptor.parse::<Descriptor>() {
        Ok(Descriptor::Veronese { degree, inner }) => format!("v{degree}({})", factor(&inner)),
        Ok(Descriptor::Segre(fs)) => format!(
            "seg({})",
            fs.iter().map(factor).collect::<Vec<_>>().join(",")
        ),
        Ok(d) => factor(&d),
        Err(_) => descriptor.to_string(),
    };
    format!(
        "{} <- {shape}",
        label.map(family_of).unwrap_or_else(|| "?".into())
    )
}

pub fn build_report(archive: &AlgebraArchive) -> Report {
    let mut minuscule = Vec::new();
    let mut adjoint = Vec::new();
    for o in &archive.outputs {
        let rec = archive
            .records
            .iter()
            .find(|r| r.round == o.round && r.status == Status::New { index: o.index });
        let input_dim = rec.map_or(0, |r| r.input_dim);
        let jacobi = rec
            .and_then(|r| r.jacobi.as_ref())
            .map(|j| j.to_string())
            .unwrap_or_default();
        let label = o.label.clone().unwrap_or_else(|| "?".into());
        let output = format!("out:{}/{}", o.round, o.index);
        match &o.fingerprint {
            Fingerprint::Minuscule {
                dim_g,
                dim_v,
                ladder,
            } => minuscule.push(MinusculeRow {
                round: o.round,
                output,
                input: o.descriptor.clone(),
                input_dim,
                dim_g: *dim_g,
                dim_v: *dim_v,
                ladder: ladder.clone(),
                label,
                jacobi,
            }),
            Fingerprint::Adjoint { graded } => adjoint.push(AdjointRow {
                round: o.round,
                output,
                input: o.descriptor.clone(),
                input_dim,
                graded: *graded,
                dim_g: graded.iter().sum(),
                label,
                jacobi,
            }),
        }
    }
    let mut seen = BTreeSet::new();
    let mut rounds = Vec::new();
    for round in 1..=archive.completed_rounds() {
        let recs: Vec<_> = archive
            .records
            .iter()
            .filter(|r| r.round == round)
            .collect();
        let count = |f: &dyn Fn(&Status) -> bool| recs.iter().filter(|r| f(&r.status)).count();
        let mut new_families = Vec::new();
        for r in &recs {
            if r.algorithm == Algorithm::Minuscule && matches!(r.status, Status::New { .. }) {
                let key = family_key(archive, &r.descriptor, r.label.as_deref());
                if seen.insert(key.clone()) {
                    new_families.push(key);
                }
            }
        }
        let new_of = |alg: Algorithm| {
            recs.iter()
                .filter(|r| r.algorithm == alg && matches!(r.status, Status::New { .. }))
                .count()
        };
        rounds.push(RoundRow {
            round,
            candidates: recs.len(),
            pruned: count(&|s| matches!(s, Status::Pruned { .. })),
            inadmissible: count(&|s| matches!(s, Status::Inadmissible)),
            capped: count(&|s| matches!(s, Status::Capped { .. })),
            failed: count(&|s| matches!(s, Status::Failed { .. })),
            duplicates: count(&|s| matches!(s, Status::Duplicate { .. })),
            new_minuscule: new_of(Algorithm::Minuscule),
            new_adjoint: new_of(Algorithm::Adjoint),
            new_families,
        });
    }
    let stabilization = (rounds.len() >= 2).then(|| {
        let last = &rounds[rounds.len() - 2..];
        Stabilization {
            literal: last.iter().all(|r| r.new_minuscule == 0),
            family_level: last.iter().all(|r| r.new_families.is_empty()),
            last_rounds: last.iter().map(|r| r.round).collect(),
        }
    });
    Report {
        minuscule,
        adjoint,
        rounds,
        stabilization,
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Markdown => render_markdown(report),
        Format::Text => render_text(report),
    }
}

fn render_markdown(r: &Report) -> String {
    let mut s = String::new();
    s.push_str("## Minuscule outputs\n\n");
    s.push_str("| round | output | input | input dim | g dim | V dim | ladder | type | Jacobi |\n");
    s.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for m in &r.minuscule {
        let _ = writeln!(
            s,
            "| {} | {} | `{}` | {} | {} | {} | ({}) | {} | {} |",
            m.round,
            m.output,
            m.input,
            m.input_dim,
            m.dim_g,
            m.dim_v,
            join(&m.ladder),
            m.label,
            m.jacobi
        );
    }
    s.push_str("\n## Adjoint outputs\n\n");
    s.push_str("| round | output | input | input dim | graded dims | g dim | type | Jacobi |\n");
    s.push_str("|---|---|---|---|---|---|---|---|\n");
    for a in &r.adjoint {
        let _ = writeln!(
            s,
            "| {} | {} | `{}` | {} | ({}) | {} | {} | {} |",
            a.round,
            a.output,
            a.input,
            a.input_dim,
            join(&a.graded),
            a.dim_g,
            a.label,
            a.jacobi
        );
    }
    s.push_str("\n## Rounds\n\n");
    s.push_str("| round | candidates | pruned | inadmissible | capped | failed | duplicates | new minuscule | new adjoint | new families |\n");
    s.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
    for x in &r.rounds {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            x.round,
            x.candidates,
            x.pruned,
            x.inadmissible,
            x.capped,
            x.failed,
            x.duplicates,
            x.new_minuscule,
            x.new_adjoint,
            x.new_families.join("; ")
        );
    }
    if let Some(st) = &r.stabilization {
        let _ = writeln!(
            s,
            "\nStabilization over rounds {}: fingerprints {}, families {}.",
            join(&st.last_rounds),
            if st.literal {
                "stable"
            } else {
                "still growing"
            },
            if st.family_level {
                "stable"
            } else {
                "still growing"
            }
        );
    }
    s
}

fn render_text(r: &Report) -> String {
    let mut s = String::new();
    s.push_str("minuscule outputs\n");
    let _ = writeln!(
        s,
        "{:>5}  {:<10} {:<28} {:>6} {:>6} {:>6}  {:<24} {:<10} jacobi",
        "round", "output", "input", "in", "g", "V", "ladder", "type"
    );
    for m in &r.minuscule {
        let _ = writeln!(
            s,
            "{:>5}  {:<10} {:<28} {:>6} {:>6} {:>6}  {:<24} {:<10} {}",
            m.round,
            m.output,
            m.input,
            m.input_dim,
            m.dim_g,
            m.dim_v,
            join(&m.ladder),
            m.label,
            m.jacobi
        );
    }
    s.push_str("\nadjoint outputs\n");
    let _ = writeln!(
        s,
        "{:>5}  {:<10} {:<28} {:>6} {:<20} {:>6} {:<10} jacobi",
        "round", "output", "input", "in", "graded", "g", "type"
    );
    for a in &r.adjoint {
        let _ = writeln!(
            s,
            "{:>5}  {:<10} {:<28} {:>6} {:<20} {:>6} {:<10} {}",
            a.round,
            a.output,
            a.input,
            a.input_dim,
            join(&a.graded),
            a.dim_g,
            a.label,
            a.jacobi
        );
    }
    s.push_str("\nrounds\n");
    for x in &r.rounds {
        let _ = writeln!(
            s,
            "round {}: {} candidates, {} pruned, {} inadmissible, {} capped, {} failed, {} duplicates, {} new minuscule, {} new adjoint, new families [{}]",
            x.round,
            x.candidates,
            x.pruned,
            x.inadmissible,
            x.capped,
            x.failed,
            x.duplicates,
            x.new_minuscule,
            x.new_adjoint,
            x.new_families.join("; ")
        );
    }
    if let Some(st) = &r.stabilization {
        let _ = writeln!(
            s,
            "stabilization over rounds {}: literal {}, family level {}",
            join(&st.last_rounds),
            st.literal,
            st.family_level
        );
    }
    s
}
