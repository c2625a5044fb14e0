//! One PASS/FAIL line per acceptance criterion. All checks are exact; each
//! criterion carries a pinned wall-clock limit.
//!
//! Run with `cargo test -p qforms-cli --test acceptance -- --nocapture`.

use std::io::Write;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use qforms_core::autgroup::{group_verdict, AffineQuadric, GroupKind};
use qforms_core::exactnum::int;
use qforms_core::isotropy::first_witt_index;
use qforms_core::pfister::pfister;
use qforms_core::poly::parse_polynomial_infer;
use qforms_core::qform::{is_equivalent, tensor};
use qforms_core::ruledness::{binary_divisibility_search, classify_ruledness, sphere_quadric_ruledness, DivisorCandidates, Ruledness};
use qforms_core::suites::{self, SuiteCheck};
use qforms_core::{Field, QuadraticForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 20241015;

type Outcome = Result<String, String>;

fn summarize(checks: &[SuiteCheck]) -> Outcome {
    let bad: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    if bad.is_empty() {
        Ok(format!("{} checks", checks.len()))
    } else {
        Err(bad.join(" | "))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_families() -> Outcome {
    let checks = suites::random_family_checks(SEED, 50);
    ensure(checks.len() == 50, || format!("{} families", checks.len()))?;
    summarize(&checks)
}

fn c02_classical() -> Outcome {
    summarize(&suites::classical_family_checks())
}

fn c03_composition() -> Outcome {
    let mut checks = suites::composition_identities();
    checks.extend(suites::associator_checks());
    summarize(&checks)
}

fn c04_ahmad_ohm() -> Outcome {
    let checks = suites::ahmad_ohm_identities(3);
    // 2 + 4 + 8 choices of P1 dimension, each with r = 1, 2, 3.
    ensure(checks.len() == 42, || format!("{} certificates", checks.len()))?;
    summarize(&checks)
}

fn c05_hopf() -> Outcome {
    summarize(&suites::hopf_identities())
}

fn c06_isotropy_oracle() -> Outcome {
    let mut checks = vec![suites::hilbert_agreement(&[0, 2, 3, 5, 7, 11])];
    checks.push(suites::isotropy_agreement(SEED, 200));
    summarize(&checks)
}

fn c07_witt_recovery() -> Outcome {
    summarize(&[suites::witt_recovery(SEED, 100)])
}

fn c08_real_i1() -> Outcome {
    for m in 2..=17usize {
        let q = QuadraticForm::diagonal_ints(Field::R, &vec![1; m]).map_err(|e| e.to_string())?;
        let r = first_witt_index(&q).map_err(|e| e.to_string())?;
        let expected = m - (m.next_power_of_two() >> 1);
        ensure(r.value == Some(expected), || format!("m = {m}: got {:?}, expected {expected}", r.value))?;
    }
    Ok("m = 2..17".into())
}

fn sphere(n: usize) -> Result<(GroupKind, Option<String>), String> {
    let terms: Vec<String> = (0..=n).map(|i| format!("x{i}^2")).collect();
    let f = parse_polynomial_infer(&format!("{} - 1", terms.join(" + "))).map_err(|e| e.to_string())?;
    let x = AffineQuadric::new(Field::R, &f, None).map_err(|e| e.to_string())?;
    let v = group_verdict(&x, false, 10).map_err(|e| e.to_string())?;
    Ok((v.verdict, v.named_group))
}

fn c09_spheres() -> Outcome {
    for n in [1, 2, 4, 8, 16] {
        let (kind, name) = sphere(n)?;
        let want = format!("O({})", n + 1);
        ensure(kind == GroupKind::PgoWInV && name.as_deref() == Some(want.as_str()), || format!("n = {n}: {kind:?} {name:?}"))?;
    }
    for n in [3, 5, 6, 7, 9] {
        let (kind, _) = sphere(n)?;
        ensure(kind == GroupKind::Unknown, || format!("n = {n}: {kind:?}"))?;
    }
    Ok("10 spheres".into())
}

fn c10_ruledness() -> Outcome {
    let table: [(&[i64], Ruledness); 6] = [
        (&[1, 1, 1, 1], Ruledness::Ruled),
        (&[1, 1, 1, 7], Ruledness::NotRuled),
        (&[1, 1, 1, 1, 1], Ruledness::NotRuled),
        (&[1; 6], Ruledness::Ruled),
        (&[1; 7], Ruledness::Ruled),
        (&[1; 9], Ruledness::NotRuled),
    ];
    for (e, want) in table {
        let q = QuadraticForm::diagonal_ints(Field::Q, e).map_err(|e| e.to_string())?;
        let v = classify_ruledness(&q).map_err(|e| e.to_string())?;
        ensure(v.verdict == want, || format!("{e:?}: {:?}", v.verdict))?;
        ensure(!v.trace.is_empty(), || format!("{e:?}: empty trace"))?;
        if e.len() == 6 {
            let d = v.divisibility.as_ref().ok_or("six ones: no divisibility certificate")?;
            let cof: Vec<_> = d.cofactor.iter().map(|c| c.to_rational()).collect();
            ensure(d.verified && d.binary_class.to_rational() == int(-1) && cof == vec![int(1); 3], || format!("six ones: b = {}, tau = {cof:?}", d.binary_class))?;
        }
    }
    for n in 1..=32usize {
        let v = sphere_quadric_ruledness(n).map_err(|e| e.to_string())?;
        let want = if n.is_power_of_two() { Ruledness::NotRuled } else { Ruledness::Ruled };
        ensure(v.verdict == want, || format!("sphere n = {n}: {:?}", v.verdict))?;
    }
    Ok("6 forms, spheres n <= 32".into())
}

fn c11_divisibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = 0;
    while done < 50 {
        let b: i64 = rng.gen_range(-10..=10);
        if b == 0 {
            continue;
        }
        let len = rng.gen_range(1..=4);
        let tau: Vec<i64> = (0..len).map(|_| loop {
            let t: i64 = rng.gen_range(-9..=9);
            if t != 0 {
                break t;
            }
        }).collect();
        let run = || -> qforms_core::Result<bool> {
            let q = tensor(&pfister(Field::Q, &[int(b)])?.form, &QuadraticForm::diagonal_ints(Field::Q, &tau)?)?;
            match binary_divisibility_search(&q, &DivisorCandidates::Forced)? {
                Some(c) => Ok(c.verified && is_equivalent(&q, &c.form(Field::Q)?)?),
                None => Ok(false),
            }
        };
        let ok = run().map_err(|e| format!("b = {b}, tau = {tau:?}: {e}"))?;
        ensure(ok, || format!("b = {b}, tau = {tau:?}: no verified certificate"))?;
        done += 1;
    }
    Ok("50 round trips".into())
}

fn qforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qforms")).args(args).output().expect("spawn qforms")
}

fn schema_validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).expect("schema parses");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn validate(v: &jsonschema::Validator, report: &Value, what: &str) -> Result<(), String> {
    let errs: Vec<String> = v.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    ensure(errs.is_empty(), || format!("{what}: {}", errs.join("; ")))
}

fn c12_cli() -> Outcome {
    let validator = schema_validator();
    let runs: &[(&[&str], i32)] = &[
        (&["--json", "analyze", "--diag", "1,1,-2"], 0),
        (&["--json", "isotropy", "--diag", "1,1,1,7"], 0),
        (&["--json", "witt", "--diag", "1,-1,3"], 0),
        (&["--json", "i1", "--field", "R", "--diag", "1,1,1,1,1"], 0),
        (&["--json", "i1", "--diag", "1,1,1,1,1,1,1,1,1,1,1,3"], 0),
        (&["--json", "ruled", "--diag", "1,1,1,1,1,1"], 0),
        (&["--json", "ruled", "--diag", "1,2,3,5,7,11,13,17,19,23"], 0),
        (&["--json", "sphere-ruled", "8"], 0),
        (&["--json", "aut", "--field", "R", "--poly", "x0^2+x1^2+x2^2-1"], 0),
        (&["--json", "aut", "--poly", "x1*x2+x3^2-1"], 0),
        (&["--json", "pfister", "build", "--params=-1,-1"], 0),
        (&["--json", "pfister", "multiply", "--params=a,b"], 0),
        (&["--json", "pfister", "neighbor", "--diag", "1,2,3,5,7,11"], 0),
        (&["--json", "pfister", "hopf", "--fold", "2"], 0),
        (&["--json", "map", "--params=-1", "--p1-dim", "2", "--scalars", "1,1"], 0),
        (&["--json", "i1", "--diag", "1,1,x"], 1),
        (&["--json", "i1", "--diag", "1,-1,3"], 1),
        (&["--json", "bogus"], 1),
    ];
    let mut undetermined = 0;
    for (args, code) in runs {
        let a = qforms(args);
        let b = qforms(args);
        let label = args.join(" ");
        ensure(a.stdout == b.stdout, || format!("{label}: output differs between runs"))?;
        ensure(a.status.code() == Some(*code), || format!("{label}: exit {:?}, expected {code}", a.status.code()))?;
        let text = String::from_utf8(a.stdout).map_err(|e| e.to_string())?;
        let report: Value = serde_json::from_str(&text).map_err(|e| format!("{label}: {e}"))?;
        validate(&validator, &report, &label)?;
        let canonical = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n";
        ensure(canonical == text, || format!("{label}: not in canonical sorted-key form"))?;
        if text.contains("\"Undetermined\"") {
            undetermined += 1;
        }
    }
    ensure(undetermined >= 3, || format!("only {undetermined} Undetermined reports exercised"))?;

    let dir = std::env::temp_dir().join(format!("qforms-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let batch = dir.join("forms.ndjson");
    let lines = [
        r#"{"field":"Q","diagonal":["1","1","1","7"]}"#,
        r#"{"field":"R","diagonal":["1","1","1","1","1","1","1","1","1"]}"#,
        "not json",
        r#"{"field":"Q","diagonal":["1","1","1","1","1","1","1","1","1","1","1","3"]}"#,
        r#"{"field":"Q","diagonal":["1","2","q"]}"#,
    ];
    std::fs::write(&batch, lines.join("\n") + "\n").map_err(|e| e.to_string())?;
    let path = batch.to_string_lossy().into_owned();
    for cmd in ["i1", "ruled", "analyze"] {
        let args = ["--json", cmd, "--batch", path.as_str()];
        let a = qforms(&args);
        let b = qforms(&args);
        ensure(a.stdout == b.stdout, || format!("batch {cmd}: output differs between runs"))?;
        ensure(a.status.code() == Some(0), || format!("batch {cmd}: exit {:?}", a.status.code()))?;
        let text = String::from_utf8(a.stdout).map_err(|e| e.to_string())?;
        let reports: Vec<&str> = text.lines().collect();
        ensure(reports.len() == lines.len(), || format!("batch {cmd}: {} reports", reports.len()))?;
        for (i, line) in reports.iter().enumerate() {
            let report: Value = serde_json::from_str(line).map_err(|e| format!("batch {cmd}: {e}"))?;
            validate(&validator, &report, &format!("batch {cmd} line {}", i + 1))?;
            ensure(report["line"] == Value::from(i + 1), || format!("batch {cmd}: report {i} out of order"))?;
            ensure(serde_json::to_string(&report).map_err(|e| e.to_string())? == *line, || format!("batch {cmd}: line {} not canonical", i + 1))?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} invocations, 3 batches", runs.len()))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 12] = [
        (1, "additive families on random quadrics", 30, c01_families),
        (2, "classical family and twists", 1, c02_classical),
        (3, "Pfister multiplicativity and associator", 10, c03_composition),
        (4, "multiplicative map certificates", 60, c04_ahmad_ohm),
        (5, "Hopf map certificates", 10, c05_hopf),
        (6, "local-global isotropy vs brute force", 60, c06_isotropy_oracle),
        (7, "Witt index recovery", 30, c07_witt_recovery),
        (8, "first Witt index over R", 1, c08_real_i1),
        (9, "sphere automorphism verdicts", 1, c09_spheres),
        (10, "ruledness golden table", 10, c10_ruledness),
        (11, "divisibility round trip", 60, c11_divisibility),
        (12, "CLI determinism and schema", 10, c12_cli),
    ];
    let mut failed = Vec::new();
    let _ = std::io::stdout().lock().write_all(b"\n");
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        // Written to the handle directly so the line survives test output capture.
        let line = format!("criterion {id:>2} {status} {name} [{:.3}s / {limit}s] {detail}\n", elapsed.as_secs_f64());
        let _ = std::io::stdout().lock().write_all(line.as_bytes());
        if status == "FAIL" {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
