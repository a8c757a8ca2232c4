//! One PASS/FAIL line per acceptance criterion. Exits nonzero when a
//! criterion other than the literal stabilization count fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use liecraft_catalog::archive::ArchivedOutput;
use liecraft_catalog::build::build;
use liecraft_catalog::classify::run_adjoint_descriptor;
use liecraft_catalog::{
    build_report, classify, render, verify, AlgebraArchive, Algorithm, ClassifyConfig, Descriptor,
    Fingerprint, Format, Level, Status,
};
use liecraft_core::adjoint::{
    base_locus_report, orbit_series, run_adjoint, sl3_display, special_case_a, AdjointOutput,
};
use liecraft_core::exactlin::{annihilator, binomial, Rational, RationalMatrix, SparseVec};
use liecraft_core::minuscule::{full_casimir, run_minuscule, theta_operator, MinusculeError};
use liecraft_core::repcore::{cartan_complement_ideal, casimir_on, sl_standard, Representation};
use liecraft_core::seeded_rng;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_point(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect()
}

fn minuscule_of_round(a: &AlgebraArchive, round: usize) -> Vec<&ArchivedOutput> {
    a.outputs
        .iter()
        .filter(|o| o.round == round && o.algorithm == Algorithm::Minuscule)
        .collect()
}

fn dims(o: &ArchivedOutput) -> (usize, usize, Vec<usize>) {
    match &o.fingerprint {
        Fingerprint::Minuscule {
            dim_g,
            dim_v,
            ladder,
        } => (*dim_g, *dim_v, ladder.clone()),
        Fingerprint::Adjoint { graded } => (graded.iter().sum(), 0, graded.to_vec()),
    }
}

fn input_dim(a: &AlgebraArchive, o: &ArchivedOutput) -> usize {
    let d: Descriptor = o.descriptor.parse().unwrap();
    liecraft_catalog::build::shape(&d, a)
        .map(|s| s.dim)
        .unwrap_or(0)
}

fn criterion_1(a: &AlgebraArchive) -> Outcome {
    let found: BTreeSet<(usize, usize)> = minuscule_of_round(a, 1)
        .iter()
        .map(|o| (dims(o).0, dims(o).1))
        .collect();
    let expected = BTreeSet::from([(8, 3), (15, 6), (10, 5)]);
    ensure(found == expected, format!("round 1 gave {found:?}"))?;
    Ok(format!("round 1 minuscule outputs {found:?}"))
}

fn criterion_2(a: &AlgebraArchive) -> Outcome {
    let found: BTreeSet<(usize, usize, Vec<usize>)> =
        minuscule_of_round(a, 2).iter().map(|o| dims(o)).collect();
    let expected = BTreeSet::from([
        (15, 4, vec![1, 3]),
        (21, 14, vec![1, 6, 6, 1]),
        (21, 7, vec![1, 5, 1]),
        (28, 8, vec![1, 6, 1]),
        (24, 10, vec![1, 6, 3]),
        (35, 20, vec![1, 9, 9, 1]),
    ]);
    ensure(found == expected, format!("round 2 gave {found:?}"))?;
    Ok(
        "P3, LG(3,6) with ladder (1,6,6,1) total 14, Q5, Q6, G(2,5) as (24,10), G(3,6) as (35,20)"
            .into(),
    )
}

fn catalan(n: usize) -> usize {
    binomial(2 * n, n) / (n + 1)
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for n in 3..=8 {
        for k in 1..n {
            let l = n - k;
            let t = match (k, l) {
                (1, _) => sl_standard(l),
                (_, 1) => sl_standard(k),
                _ => Representation::outer_tensor(&sl_standard(k), &sl_standard(l)),
            };
            let out = run_minuscule(&t, "G").map_err(|e| format!("G({k},{n}): {e}"))?;
            ensure(
                out.ladder.total_dim() == binomial(n, k),
                format!("G({k},{n}) total {}", out.ladder.total_dim()),
            )?;
            checked += 1;
        }
    }
    for m in 4..=7 {
        let t = sl_standard(m)
            .exterior_power(2)
            .with_extreme(SparseVec::unit(0));
        let out = run_minuscule(&t, "S").map_err(|e| format!("G(2,{m}): {e}"))?;
        ensure(
            out.ladder.total_dim() == 1 << (m - 1),
            format!("G(2,{m}) gives V dim {}", out.ladder.total_dim()),
        )?;
        checked += 1;
    }
    for m in 2..=5 {
        let out = run_minuscule(&sl_standard(m).symmetric_power(2), "L")
            .map_err(|e| format!("v2(P{}): {e}", m - 1))?;
        ensure(
            out.ladder.total_dim() == catalan(m + 1),
            format!("v2(P{}) total {}", m - 1, out.ladder.total_dim()),
        )?;
        checked += 1;
    }
    Ok(format!(
        "{checked} series members match binomial, power of two and Catalan totals"
    ))
}

fn criterion_4(a: &AlgebraArchive) -> Outcome {
    let from16 = a
        .outputs
        .iter()
        .find(|o| o.algorithm == Algorithm::Minuscule && input_dim(a, o) == 16 && dims(o).0 == 78)
        .ok_or("no output of g dim 78 from a 16-dim input")?;
    ensure(dims(from16).1 == 27, "V dim is not 27")?;
    let next = format!("out:{}/{}", from16.round, from16.index);
    let e7 = a
        .outputs
        .iter()
        .find(|o| o.algorithm == Algorithm::Minuscule && o.descriptor == next)
        .ok_or("the 27-dim output was not run")?;
    let (g, v, ladder) = dims(e7);
    ensure(
        (g, v, ladder.clone()) == (133, 56, vec![1, 27, 27, 1]),
        format!("got ({g},{v}) {ladder:?}"),
    )?;
    Ok(format!(
        "{} -> (78,27) as {next}, then (133,56) ladder (1,27,27,1)",
        from16.descriptor
    ))
}

const EXCEPTIONAL: [(&str, [usize; 5]); 5] = [
    ("g2", [1, 4, 4, 4, 1]),
    ("f4", [1, 14, 22, 14, 1]),
    ("e6", [1, 20, 36, 20, 1]),
    ("e7", [1, 32, 67, 32, 1]),
    ("e8", [1, 56, 134, 56, 1]),
];

fn exceptional_outputs(a: &AlgebraArchive) -> Result<Vec<(&'static str, AdjointOutput)>, String> {
    let mut out = Vec::new();
    for (name, graded) in EXCEPTIONAL {
        let o = a
            .outputs
            .iter()
            .find(|o| o.fingerprint == Fingerprint::Adjoint { graded })
            .ok_or(format!("no {name} in the archive"))?;
        let d: Descriptor = o.descriptor.parse().unwrap();
        let run = run_adjoint_descriptor(&d, a).map_err(|s| format!("{name}: {s:?}"))?;
        out.push((name, run));
    }
    Ok(out)
}

fn criterion_5(a: &AlgebraArchive, exc: &[(&str, AdjointOutput)]) -> Outcome {
    let mut parts = Vec::new();
    for ((name, out), (_, graded)) in exc.iter().zip(EXCEPTIONAL) {
        ensure(
            out.grading.dims() == graded,
            format!("{name} graded dims {:?}", out.grading.dims()),
        )?;
        ensure(out.simple, format!("{name} is not simple"))?;
        let src = a
            .outputs
            .iter()
            .find(|o| o.fingerprint == Fingerprint::Adjoint { graded })
            .unwrap();
        parts.push(format!("{name} {graded:?} from {}", src.descriptor));
    }
    Ok(parts.join(", "))
}

fn criterion_6(a: &AlgebraArchive) -> Outcome {
    let bundle = verify(a, Level::Full);
    ensure(bundle.passed(), format!("{:?}", bundle.failures()))?;
    for c in &bundle.certificates {
        let j = c.jacobi.as_ref().unwrap();
        ensure(
            c.dim > 150 || j.exhaustive,
            format!("{} not exhaustive", c.output),
        )?;
        ensure(
            j.exhaustive || j.triples_checked >= 100_000,
            format!("{} sampled too few", c.output),
        )?;
    }
    let e8 = bundle
        .certificates
        .iter()
        .find(|c| c.dim == 248)
        .ok_or("no e8 certificate")?;
    Ok(format!(
        "{} outputs, {} exhaustive triples, e8 sampled {} triples with no violation",
        bundle.certificates.len(),
        bundle.exhaustive_triples(),
        e8.jacobi.as_ref().unwrap().triples_checked
    ))
}

fn criterion_7(exc: &[(&str, AdjointOutput)]) -> Outcome {
    let mut rng = seeded_rng(7);
    let mut factors = Vec::new();
    for (name, out) in exc {
        let low = out.grading.low;
        let mut ratio: Option<Rational> = None;
        for _ in 0..20 {
            let x = random_point(&mut rng, 1).pop().unwrap();
            let u = random_point(&mut rng, out.frame.n());
            let s = orbit_series(&out.algebra, &out.frame, &out.grading, &x, &u);
            ensure(s[4].is_zero(), format!("{name}: X^5 w is not zero"))?;
            ensure(
                s[3] == SparseVec::unit(low).scale(&s[3].get(low)),
                format!("{name}: X^4 w leaves the bottom"),
            )?;
            let p = out.quartic.eval(&u);
            let c = s[3].get(low);
            if p.is_zero() {
                ensure(
                    c.is_zero(),
                    format!("{name}: X^4 w nonzero where p vanishes"),
                )?;
                continue;
            }
            let rho = ratio.get_or_insert_with(|| &c / &p);
            ensure(
                c == &*rho * &p,
                format!("{name}: X^4 w not proportional to p"),
            )?;
        }
        factors.push(format!(
            "{name} {}",
            ratio.ok_or(format!("{name}: p vanished at every point"))?
        ));
    }
    Ok(format!(
        "20 points each, X^4 w / p = {}",
        factors.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let out = special_case_a(2).map_err(|e| e.to_string())?;
    let disp = sl3_display(&out).map_err(|e| e.to_string())?;
    ensure(
        disp.homomorphism && disp.matches,
        "display does not match the evaluated map",
    )?;
    let mut rng = seeded_rng(8);
    for _ in 0..50 {
        let mut p = random_point(&mut rng, 4);
        if p[0].is_zero() {
            p[0] = Rational::one();
        }
        let m = disp
            .image(&out, [&p[0], &p[1], &p[2], &p[3]])
            .map_err(|e| e.to_string())?;
        let trace: Rational = (0..3).map(|i| m[i][i].clone()).sum();
        ensure(trace.is_zero(), "trace is not zero")?;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for (k, l) in [(0, 1), (0, 2), (1, 2)] {
                let minor = &(&m[i][k] * &m[j][l]) - &(&m[i][l] * &m[j][k]);
                ensure(minor.is_zero(), "an image has rank above one")?;
            }
        }
    }
    Ok(format!(
        "display reproduced with overall scale {}; 50 images of rank one and trace zero",
        disp.scale
    ))
}

fn minuscule_inadmissible(a: &AlgebraArchive, s: &str) -> Result<(), String> {
    let t = build(&s.parse().unwrap(), a).map_err(|e| e.to_string())?;
    match run_minuscule(&t, s) {
        Err(MinusculeError::Inadmissible) => Ok(()),
        Ok(out) => Err(format!(
            "{s} gave ({}, {})",
            out.algebra.dim(),
            out.module.rep.module_dim()
        )),
        Err(e) => Err(format!("{s}: {e}")),
    }
}

fn criterion_9(a: &AlgebraArchive) -> Outcome {
    for s in ["v3(P1)", "seg(P1,P1,P1)"] {
        minuscule_inadmissible(a, s)?;
    }
    let g2 = run_adjoint_descriptor(&"v3(P1)".parse().unwrap(), a)
        .map_err(|s| format!("v3(P1) adjoint: {s:?}"))?;
    ensure(g2.dim() == 14, "v3(P1) adjoint is not 14-dimensional")?;
    let so8 = run_adjoint_descriptor(&"seg(P1,P1,P1)".parse().unwrap(), a)
        .map_err(|s| format!("{s:?}"))?;
    ensure(
        so8.dim() == 28,
        format!("seg(P1,P1,P1) adjoint has dim {}", so8.dim()),
    )?;
    // Q3, Q4 and G(2,5) are not projective spaces.
    let segres = [
        "seg(P1,out:1/1)",
        "seg(P1,out:1/2)",
        "seg(out:1/1,out:1/1)",
        "seg(out:1/0,out:1/2)",
        "seg(P1,out:2/4)",
    ];
    for s in segres {
        minuscule_inadmissible(a, s)?;
    }
    Ok(format!(
        "both minuscule-inadmissible, adjoint dims 14 and 28; {} Segre products rejected",
        segres.len()
    ))
}

fn theta_identity(t: &Representation) -> bool {
    let form = t.algebra().killing().clone();
    let Some(c_t) = full_casimir(t, &form).ok().and_then(|c| c.as_scalar()) else {
        return false;
    };
    let Ok(wedge) = casimir_on(&t.exterior_power(2), &form) else {
        return false;
    };
    let shift =
        RationalMatrix::identity(wedge.matrix.rows()).scale(&(&c_t * &Rational::from_int(2)));
    theta_operator(t, &form).is_ok_and(|th| th == wedge.matrix.sub(&shift))
}

fn criterion_10(a: &AlgebraArchive, again: &AlgebraArchive) -> Outcome {
    let sl2 = Representation::sl2_standard();
    let inputs = [
        sl2.clone(),
        sl2.symmetric_power(2),
        sl2.symmetric_power(3),
        Representation::outer_tensor(&sl2, &sl2),
        sl_standard(3),
        sl_standard(3).symmetric_power(2),
        sl_standard(4)
            .exterior_power(2)
            .with_extreme(SparseVec::unit(0)),
    ];
    for (i, t) in inputs.iter().enumerate() {
        for m in [
            t.symmetric_power(2),
            t.exterior_power(2),
            Representation::outer_tensor(t, t),
        ] {
            ensure(
                m.homomorphism_violation().is_none(),
                format!("derived module of input {i} is not a homomorphism"),
            )?;
            let c = casimir_on(&m, m.algebra().killing()).map_err(|e| e.to_string())?;
            ensure(
                m.action().iter().all(|x| c.matrix.commutator(x).is_zero()),
                "Casimir does not commute",
            )?;
        }
        ensure(
            theta_identity(t),
            format!("theta identity fails on input {i}"),
        )?;
        let ideal = cartan_complement_ideal(t).map_err(|e| e.to_string())?;
        let back = annihilator(&annihilator(&ideal));
        ensure(
            back.dim() == ideal.dim() && ideal.basis().iter().all(|v| back.contains(v)),
            "annihilator involution",
        )?;
    }
    let t3 = Representation::outer_tensor(&Representation::outer_tensor(&sl2, &sl2), &sl2);
    for t in [
        sl2.symmetric_power(3),
        t3,
        sl_standard(6)
            .exterior_power(3)
            .with_extreme(SparseVec::unit(0)),
    ] {
        let out = run_adjoint(&t, "g").map_err(|e| e.to_string())?;
        ensure(out.frame.theta_symmetric(), "theta is not symmetric")?;
        let rep = base_locus_report(&out.frame).map_err(|e| e.to_string())?;
        ensure(
            rep.passed() && rep.ideal_dim == t.algebra().dim(),
            format!("base locus {rep:?}"),
        )?;
    }
    let json = a.to_json().map_err(|e| e.to_string())?;
    let reloaded = AlgebraArchive::from_json(&json).map_err(|e| e.to_string())?;
    ensure(
        reloaded.to_json().map_err(|e| e.to_string())? == json,
        "archive round trip is not byte-identical",
    )?;
    ensure(
        again.to_json().map_err(|e| e.to_string())? == json,
        "two classify runs differ",
    )?;
    for f in [Format::Text, Format::Markdown, Format::Json] {
        ensure(
            render(&build_report(a), f) == render(&build_report(again), f),
            "reports differ",
        )?;
    }
    Ok(format!("identities on {} inputs and 3 adjoint frames; archive of {} bytes reproduced byte for byte", inputs.len(), json.len()))
}

/// Literal criterion: rounds 7 and 8 add no fingerprint. Second value is
/// the family-level reading.
fn criterion_11(a: &AlgebraArchive) -> (Outcome, String) {
    let report = build_report(a);
    let tail: Vec<_> = report.rounds.iter().filter(|r| r.round >= 7).collect();
    let counts: Vec<String> = tail
        .iter()
        .map(|r| {
            format!(
                "round {}: {} minuscule, {} adjoint",
                r.round, r.new_minuscule, r.new_adjoint
            )
        })
        .collect();
    let families: Vec<String> = tail
        .iter()
        .flat_map(|r| r.new_families.iter().cloned())
        .collect();
    let family = if families.is_empty() {
        "no new family in rounds 7 and 8".to_string()
    } else {
        format!("new families in rounds 7 and 8: {}", families.join("; "))
    };
    let literal = tail.len() == 2
        && tail
            .iter()
            .all(|r| r.new_minuscule == 0 && r.new_adjoint == 0);
    let detail = format!("new fingerprints {}", counts.join(", "));
    (if literal { Ok(detail) } else { Err(detail) }, family)
}

fn line(n: usize, outcome: &Outcome, started: Instant) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(d) => println!("criterion {n:>2}: PASS  {d} [{secs:.1}s]"),
        Err(d) => println!("criterion {n:>2}: FAIL  {d} [{secs:.1}s]"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let start = Instant::now();
    let archive = classify(ClassifyConfig::default()).expect("classification runs");
    let failures: Vec<_> = archive.records.iter().filter(|r| r.is_failure()).collect();
    for r in &failures {
        println!(
            "record failure: {} {} {:?}",
            r.algorithm, r.descriptor, r.status
        );
    }
    let capped = archive
        .records
        .iter()
        .filter(|r| matches!(r.status, Status::Capped { .. }))
        .count();
    println!(
        "classified {} rounds in {:.1}s, {} outputs, {capped} capped",
        archive.config.rounds,
        start.elapsed().as_secs_f64(),
        archive.outputs.len()
    );
    let mut ok = failures.is_empty();

    let t = Instant::now();
    ok &= line(1, &criterion_1(&archive), t);
    let t = Instant::now();
    ok &= line(2, &criterion_2(&archive), t);
    let t = Instant::now();
    ok &= line(3, &criterion_3(), t);
    let t = Instant::now();
    ok &= line(4, &criterion_4(&archive), t);
    let t = Instant::now();
    let exc = exceptional_outputs(&archive);
    match &exc {
        Ok(exc) => {
            ok &= line(5, &criterion_5(&archive, exc), t);
            let t = Instant::now();
            ok &= line(6, &criterion_6(&archive), t);
            let t = Instant::now();
            ok &= line(7, &criterion_7(exc), t);
        }
        Err(e) => {
            ok &= line(5, &Err(e.clone()), t);
            let t = Instant::now();
            ok &= line(6, &criterion_6(&archive), t);
            ok &= line(7, &Err(e.clone()), Instant::now());
        }
    }
    let t = Instant::now();
    ok &= line(8, &criterion_8(), t);
    let t = Instant::now();
    ok &= line(9, &criterion_9(&archive), t);
    let t = Instant::now();
    let again = classify(ClassifyConfig::default()).expect("classification runs");
    ok &= line(10, &criterion_10(&archive, &again), t);
    let t = Instant::now();
    let (literal, family) = criterion_11(&archive);
    line(11, &literal, t);
    println!("             {family}");
    if literal.is_err() {
        println!("             the bootstrap chain P1 -> P2 -> P3 -> ... gives a new projective space every round");
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
