use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reesnorm"))
}

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or_default()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_code(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["code"].as_str().unwrap().to_string()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn simple_ideal(exps: &[u64]) -> String {
    let sites: Vec<String> = (1..=exps.len())
        .map(|i| format!(r#"{{"label":"M{i}","residue":{{"label":"K","degree":"1","admits_all_degrees":true}}}}"#))
        .collect();
    let e: Vec<String> = exps.iter().map(|e| format!("\"{e}\"")).collect();
    format!(r#"{{"version":1,"spot":{{"sites":[{}]}},"exponents":[{}]}}"#, sites.join(","), e.join(","))
}

#[test]
fn factor_pipes_into_normalize() {
    let f = run(&["factor", "--int", "72"], None);
    assert_eq!(f.status.code(), Some(0));
    let n = run(&["normalize", "--strategy", "prime-elim"], Some(&f.stdout));
    assert_eq!(n.status.code(), Some(0));
    let r = json(&n);
    assert_eq!(r["h"], "6");
    assert_eq!(r["oracle_verified"], true);
}

#[test]
fn all_zero_exponents_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", &simple_ideal(&[0, 0]));
    let out = run(&["normalize", "--ideal", &bad], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "unit_or_zero_ideal");
}

#[test]
fn unit_integer_is_a_domain_error() {
    let out = run(&["factor", "--int", "-1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "unit_or_zero_ideal");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["normalize", "--strategy", "fastest"], None).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["factor"], None).status.code(), Some(1));
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
}

#[test]
fn verify_accepts_untampered_and_rejects_tampered_reports() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "i.json", &simple_ideal(&[6, 4, 0, 9]));
    for strategy in ["prime-elim", "split-one", "closed-form-product", "closed-form-lcm"] {
        let report = dir.path().join(format!("{strategy}.json"));
        let report = report.to_str().unwrap();
        let out = run(&["normalize", &ideal, "--strategy", strategy, "--out", report], None);
        assert_eq!(out.status.code(), Some(0), "{strategy}");
        assert!(out.stdout.is_empty());
        let ok = run(&["verify", report], None);
        assert_eq!(ok.status.code(), Some(0), "{strategy}");
        assert_eq!(json(&ok)["verified"], true);

        let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
        let h: u64 = doc["h"].as_str().unwrap().parse().unwrap();
        doc["h"] = Value::String((h * 2).to_string());
        let bad = write(dir.path(), "tampered.json", &doc.to_string());
        let out = run(&["verify", &bad], None);
        assert_eq!(out.status.code(), Some(3), "{strategy}");
        assert_eq!(json(&out)["verified"], false);
        assert_eq!(error_code(&out), "verification");
    }
}

#[test]
fn structurally_altered_reports_fail_verification() {
    let f = run(&["factor", "--int", "72"], None);
    let n = run(&["normalize"], Some(&f.stdout));
    let mut doc = json(&n);
    doc["chain"]["steps"][0]["per_site"][0][0]["e"] = Value::String("5".into());
    let out = run(&["verify"], Some(doc.to_string().as_bytes()));
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["verify"], Some(b"{ not json"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "i.json", &simple_ideal(&[12, 18, 5]));
    for args in [
        vec!["normalize", ideal.as_str(), "--strategy", "split-one"],
        vec!["rees", ideal.as_str()],
        vec!["uniformize", ideal.as_str()],
        vec!["closed-form", ideal.as_str(), "--mode", "lcm"],
        vec!["normalize", ideal.as_str(), "--format", "text"],
    ] {
        let a = run(&args, None);
        let b = run(&args, None);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn written_reports_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "i.json", &simple_ideal(&[30, 42, 0, 35]));
    let first = run(&["normalize", &ideal], None);
    let report = write(dir.path(), "r.json", std::str::from_utf8(&first.stdout).unwrap());
    assert_eq!(run(&["verify", &report], None).status.code(), Some(0));
}

#[test]
fn multi_from_document_and_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let sites: Vec<String> = (1..=3)
        .map(|i| format!(r#"{{"label":"s{i}","residue":{{"label":"K","degree":"1","admits_all_degrees":true}}}}"#))
        .collect();
    let doc = format!(r#"{{"spot":{{"sites":[{}]}},"ideals":[["1","2","0"],["0","0","3"]]}}"#, sites.join(","));
    let multi = write(dir.path(), "m.json", &doc);
    let out = run(&["multi", &multi], None);
    assert_eq!(out.status.code(), Some(0));
    let plan = json(&out);
    assert_eq!(plan["m"], "2");
    assert_eq!(plan["chain"]["steps"].as_array().unwrap().len(), 3);
    assert_eq!(plan["verdicts"][0]["multiplicity"], "3");
    assert_eq!(plan["verdicts"][1]["multiplicity"], "2");

    let text = run(&["multi", &multi, "--format", "text", "--elide-identity"], None);
    let table = String::from_utf8(text.stdout).unwrap();
    assert_eq!(table.lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).count(), 1);

    let a = write(dir.path(), "a.json", &simple_ideal(&[2, 4, 0]));
    let b = write(dir.path(), "b.json", &simple_ideal(&[0, 0, 3]));
    let out = run(&["multi", &a, &b, "--targets", "4,3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["m"], "2");

    let conflict = run(&["multi", &a, &write(dir.path(), "c.json", &simple_ideal(&[3, 0, 0])), "--targets", "4,5"], None);
    assert_eq!(conflict.status.code(), Some(2));
    assert_eq!(error_code(&conflict), "support_conflict");

    let plan = run(&["residue-plan", &multi, "--ideal", "1", "--site", "2"], None);
    assert_eq!(plan.status.code(), Some(0));
    assert_eq!(json(&plan)["evidence"]["kind"], "CondI");
}

#[test]
fn equivalence_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", &simple_ideal(&[2, 4]));
    let b = write(dir.path(), "b.json", &simple_ideal(&[3, 6]));
    let v = json(&run(&["equiv", &a, &b], None));
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["witness"]["m"], "3");
    assert_eq!(v["witness"]["n"], "2");

    let g = json(&run(&["class-gen", &a], None));
    assert_eq!(g["d"], "2");
    assert_eq!(g["generator"]["exponents"], serde_json::json!(["1", "2"]));
    assert_eq!(json(&run(&["full-check", &a], None))["verdict"], "not_generator");

    let i = run(&["factor", "--int", "12"], None);
    let j = run(&["factor", "--int", "144"], None);
    let (pi, pj) = (write(dir.path(), "i.json", std::str::from_utf8(&i.stdout).unwrap()), write(dir.path(), "j.json", std::str::from_utf8(&j.stdout).unwrap()));
    assert_eq!(json(&run(&["equiv", &pi, &pj], None))["equivalent"], true);
    assert_eq!(run(&["equiv", &a, &pi], None).status.code(), Some(2));
}

#[test]
fn polynomial_factoring_commands() {
    let out = json(&run(&["factor", "--poly", "1,0,0,-1", "--field", "Q"], None));
    let degrees: Vec<&str> = out["spot"]["sites"].as_array().unwrap().iter().map(|s| s["residue"]["degree"].as_str().unwrap()).collect();
    assert_eq!(degrees, ["1", "2"]);
    let out = run(&["factor", "--poly", "1,0,1", "--field", "4"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_single_criterion() {
    let out = run(&["selftest", "--criterion", "10"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    assert_eq!(run(&["selftest", "--criterion", "11"], None).status.code(), Some(1));
}

#[test]
fn quiet_suppresses_stdout() {
    let out = run(&["factor", "--int", "10", "--quiet"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn bounds_from_environment() {
    let out = bin()
        .args(["factor", "--int", "1000036000099"])
        .env("REESNORM_TRIAL_LIMIT", "100")
        .env("REESNORM_RHO_ITERATIONS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "factorization");
    let out = bin().args(["factor", "--int", "10"]).env("REESNORM_TRIAL_LIMIT", "many").output().unwrap();
    assert_eq!(error_code(&out), "parse");
}
