use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use liecraft_catalog::archive::AlgebraArchive;
use liecraft_catalog::build::build;
use liecraft_catalog::classify::run_adjoint_descriptor;
use liecraft_catalog::record::{series_label, JacobiSummary, Status};
use liecraft_catalog::{
    build_report, classify_with_progress, render, verify, ClassifyConfig, Descriptor, Format, Level,
};
use liecraft_core::adjoint::evaluate_phi_adjoint;
use liecraft_core::exactlin::Rational;
use liecraft_core::minuscule::{evaluate_phi, run_minuscule_capped, PROLONGATION_MONOMIAL_CAP};

/// Worker threads for round evaluation and verification.
const WORKERS_VAR: &str = "LIECRAFT_WORKERS";

#[derive(Parser)]
#[command(
    name = "liecraft",
    about = "Exact construction of simple Lie algebras from projective varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the classification rounds and write the archive.
    Classify {
        #[arg(long, default_value_t = 8)]
        rounds: usize,
        #[arg(long, default_value_t = 1600)]
        max_wedge_dim: usize,
        #[arg(long, default_value_t = PROLONGATION_MONOMIAL_CAP)]
        monomial_cap: usize,
        #[arg(long, default_value = "archive.json")]
        out: PathBuf,
    },
    /// Run the minuscule algorithm on one input.
    RunMinuscule {
        #[arg(long)]
        input: String,
        /// Archive resolving `out:r/i` references.
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// Run the adjoint algorithm on one input; `A(k)` and `C(m)` give the
    /// special series.
    RunAdjoint {
        #[arg(long)]
        input: String,
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// Recheck every archived output.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[arg(long, default_value = "archive.json")]
        archive: PathBuf,
        /// Print the certificate bundle as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the parametrization of the output variety at a point.
    EvalPhi {
        #[arg(long)]
        input: String,
        /// Comma-separated rationals: `x0,y1,..,yn` for the minuscule map,
        /// `x0,u1,..,un,x` for the adjoint one.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        adjoint: bool,
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// Render the classification tables of an archive.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value = "archive.json")]
        archive: PathBuf,
    },
}

type CliResult = Result<bool, String>;

fn main() -> ExitCode {
    if let Ok(n) = std::env::var(WORKERS_VAR) {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("ignoring {WORKERS_VAR}={n}: expected a positive integer"),
        }
    }
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<AlgebraArchive, String> {
    AlgebraArchive::load(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_optional(path: &Option<PathBuf>) -> Result<AlgebraArchive, String> {
    match path {
        Some(p) => load(p),
        None => Ok(AlgebraArchive::new(ClassifyConfig::default())),
    }
}

fn parse_descriptor(s: &str) -> Result<Descriptor, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_point(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<Rational>()
                .map_err(|e| format!("bad coordinate {x:?}: {e}"))
        })
        .collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Classify {
            rounds,
            max_wedge_dim,
            monomial_cap,
            out,
        } => {
            let config = ClassifyConfig {
                rounds,
                max_wedge_dim,
                monomial_cap,
            };
            let mut ok = true;
            let archive = classify_with_progress(config, |round, records| {
                let new = records
                    .iter()
                    .filter(|r| matches!(r.status, Status::New { .. }))
                    .count();
                let failed: Vec<_> = records.iter().filter(|r| r.is_failure()).collect();
                eprintln!(
                    "round {round}: {} candidates, {new} new outputs, {} failures",
                    records.len(),
                    failed.len()
                );
                if let Some(slow) = records.iter().max_by_key(|r| r.millis) {
                    eprintln!(
                        "  slowest {} {} in {} ms",
                        slow.algorithm, slow.descriptor, slow.millis
                    );
                }
                for r in failed {
                    eprintln!("  failure {} {}: {:?}", r.algorithm, r.descriptor, r.status);
                    ok = false;
                }
            })
            .map_err(|e| e.to_string())?;
            archive
                .save(&out)
                .map_err(|e| format!("{}: {e}", out.display()))?;
            print!("{}", render(&build_report(&archive), Format::Text));
            Ok(ok)
        }
        Command::RunMinuscule { input, archive } => {
            let archive = load_optional(&archive)?;
            let d = parse_descriptor(&input)?;
            let t = build(&d, &archive).map_err(|e| e.to_string())?;
            println!("input {d}: dim T = {}", t.module_dim());
            match run_minuscule_capped(&t, &input, archive.config.monomial_cap) {
                Ok(out) => {
                    let j = JacobiSummary::from(&out.jacobi);
                    println!("admissible");
                    println!("g dim {}", out.algebra.dim());
                    println!("V dim {}", out.module.rep.module_dim());
                    println!("ladder ({})", join(&out.ladder.dims()));
                    println!("simple {}", out.simple);
                    println!("jacobi {j}");
                    Ok(j.passed)
                }
                Err(liecraft_core::minuscule::MinusculeError::Inadmissible) => {
                    println!("inadmissible");
                    Ok(true)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::RunAdjoint { input, archive } => {
            let archive = load_optional(&archive)?;
            let d = parse_descriptor(&input)?;
            match run_adjoint_descriptor(&d, &archive) {
                Ok(out) => {
                    let j = JacobiSummary::from(&out.jacobi);
                    let graded = out.grading.dims();
                    println!("input {d}: dim T = {}", out.frame.n());
                    println!("admissible");
                    println!("graded dims ({})", join(&graded));
                    println!("g dim {}", out.dim());
                    if let Some(rank) = liecraft_catalog::build::shape(&d, &archive)
                        .ok()
                        .map(|s| s.rank + 1)
                    {
                        if let Some(label) = series_label(out.dim(), rank) {
                            println!("type {label}");
                        }
                    }
                    println!("l {}", out.l());
                    println!("simple {}", out.simple);
                    println!("jacobi {j}");
                    Ok(j.passed)
                }
                Err(Status::Inadmissible) => {
                    println!("inadmissible");
                    Ok(true)
                }
                Err(other) => Err(format!("{other:?}")),
            }
        }
        Command::Verify {
            level,
            archive,
            json,
        } => {
            let archive = load(&archive)?;
            let bundle = verify(&archive, level);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&bundle).map_err(|e| e.to_string())?
                );
            } else {
                for c in &bundle.certificates {
                    let jacobi = c
                        .jacobi
                        .as_ref()
                        .map(|j| JacobiSummary::from(j).to_string())
                        .unwrap_or_default();
                    let verdict = if c.failures.is_empty() {
                        "pass"
                    } else {
                        "FAIL"
                    };
                    println!(
                        "{:<10} dim {:>4}  jacobi {jacobi}  {verdict}",
                        c.output, c.dim
                    );
                }
                for f in bundle.failures() {
                    println!("failure: {f}");
                }
                println!("exhaustive triples {}", bundle.exhaustive_triples());
            }
            Ok(bundle.passed())
        }
        Command::EvalPhi {
            input,
            point,
            adjoint,
            archive,
        } => {
            let archive = load_optional(&archive)?;
            let d = parse_descriptor(&input)?;
            let p = parse_point(&point)?;
            let (image, dim) = if adjoint {
                let out = run_adjoint_descriptor(&d, &archive).map_err(|s| format!("{s:?}"))?;
                if p.len() < 2 {
                    return Err("point needs at least x0 and x".into());
                }
                let image = evaluate_phi_adjoint(
                    &out.algebra,
                    &out.frame,
                    &out.grading,
                    &p[0],
                    &p[1..p.len() - 1],
                    &p[p.len() - 1],
                )
                .map_err(|e| e.to_string())?;
                (image, out.dim())
            } else {
                let t = build(&d, &archive).map_err(|e| e.to_string())?;
                let out = run_minuscule_capped(&t, &input, archive.config.monomial_cap)
                    .map_err(|e| e.to_string())?;
                if p.len() != t.module_dim() + 1 {
                    return Err(format!(
                        "point has {} coordinates, expected x0 and {} more",
                        p.len(),
                        t.module_dim()
                    ));
                }
                let image = evaluate_phi(&out.module, &p[0], &p[1..]).map_err(|e| e.to_string())?;
                (image, out.module.rep.module_dim())
            };
            println!("{}", join(&image.to_dense(dim)));
            Ok(true)
        }
        Command::Report { format, archive } => {
            let archive = load(&archive)?;
            print!("{}", render(&build_report(&archive), format));
            Ok(true)
        }
    }
}
