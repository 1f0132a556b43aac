use std::path::PathBuf;
use std::process::Command;

use qloop::scalars::{parse_rat, Rat};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn qloop(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qloop"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn load(rel: &str) -> Value {
    let text = std::fs::read_to_string(crate_dir().join(rel)).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn validator(name: &str) -> jsonschema::Validator {
    let diagram = load("schemas/diagram.schema.json");
    let resource = jsonschema::Resource::from_contents(diagram.clone()).unwrap();
    jsonschema::options()
        .with_resource(diagram["$id"].as_str().unwrap(), resource)
        .build(&load(&format!("schemas/{name}")))
        .unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

#[test]
fn gsat_example_reports_condition_two() {
    let r = qloop(&["gsat", "validate", "--type", "A", "--n", "2", "--X", "1", "--tau", "id"]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["valid"], false);
    assert_eq!(j["violations"][0]["condition"], "gsat.2");
}

#[test]
fn gsat_valid_diagram_with_parameters() {
    let r = qloop(&["gsat", "validate", "--n", "1", "--tau", "1,0", "--gamma", "1=1/g0"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    assert_eq!(j["diagram"]["gamma"]["1"], "1/g0");
    assert_eq!(j["restricted_rank"], 1);
    let bad = qloop(&["gsat", "validate", "--n", "1", "--tau", "1,0", "--gamma", "0=0"]);
    assert_eq!(bad.code, 1);
    assert!(bad.json()["violations"][0]["condition"].as_str().unwrap().starts_with("params."));
}

#[test]
fn golden_r_matrix() {
    let r = qloop(&["rmatrix", "compute", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:1:b"]);
    assert_eq!(r.code, 0);
    let j = r.json();
    let got: Vec<Vec<Rat>> = j["r_matrix"]["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|x| parse_rat(x.as_str().unwrap()).unwrap()).collect())
        .collect();
    let p = |s: &str| parse_rat(s).unwrap();
    let d = p("q*(1 - b/a*z)/(q^2 - b/a*z)");
    let (o, z) = (Rat::one(), Rat::zero());
    let expected = vec![
        vec![o.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), d.clone(), p("b/a*z*(q^2 - 1)/(q^2 - b/a*z)"), z.clone()],
        vec![z.clone(), p("(q^2 - 1)/(q^2 - b/a*z)"), d, z.clone()],
        vec![z.clone(), z.clone(), z, o],
    ];
    assert_eq!(got, expected);
}

#[test]
fn named_pipeline_passes() {
    let r = qloop(&["pipeline", "run", "qonsager-sl2-fundamental"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let j = r.json();
    let ops: Vec<&str> = j["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["op"].as_str().unwrap())
        .collect();
    assert_eq!(
        ops,
        ["kmatrix compute", "kmatrix verify-gre", "kmatrix verify-re", "kmatrix verify-unitarity"]
    );
}

#[test]
fn every_shipped_scenario_passes_and_is_valid() {
    let list = qloop(&["pipeline", "list"]).json();
    let scen = validator("scenario.schema.json");
    let out = validator("output.schema.json");
    for name in list["scenarios"].as_array().unwrap() {
        let name = name.as_str().unwrap();
        assert_valid(&scen, &load(&format!("scenarios/{name}.json")));
        let r = qloop(&["pipeline", "run", name]);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        assert_valid(&out, &r.json());
    }
}

#[test]
fn scenario_from_a_path() {
    let path = crate_dir().join("scenarios/sl2-fundamental-rmatrix.json");
    let r = qloop(&["pipeline", "run", path.to_str().unwrap(), "--output", "text"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("pipeline run: pass"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["rmatrix", "compute", "--rep", "eval-sl2:1:a"],
        &["rmatrix", "compute", "--rep", "spin:1:a", "--rep", "eval-sl2:1:b"],
        &["rep", "build", "--rep", "eval-sl2:1:a", "--rep", "vector-sl:3:b"],
        &["--vars", "x=1", "rep", "build", "--rep", "eval-sl2:1:a"],
        &["kmatrix", "compute", "--X", "1", "--rep", "eval-sl2:1:a"],
        &["kmatrix", "compute", "--n", "1", "--gauge", "odd", "--rep", "eval-sl2:1:a"],
        &["gsat", "validate", "--type", "B", "--n", "2"],
        &["pipeline", "run", "no-such-scenario"],
        &["rep", "build", "--rep", "eval-sl2:1:a", "--output", "yaml"],
    ];
    for args in cases {
        let r = qloop(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn mathematical_failures_exit_one_with_report() {
    let out = validator("output.schema.json");
    // τ = id has no canonical normalization
    let r = qloop(&["kmatrix", "verify-unitarity", "--n", "1", "--tau", "0,1", "--rep", "eval-sl2:1:a"]);
    assert_eq!(r.code, 1);
    assert!(r.json()["error"].as_str().unwrap().contains("normalization"));
    assert_valid(&out, &r.json());
    let r = qloop(&["kmatrix", "verify-re", "--n", "1", "--rep", "eval-sl2:1:1", "--rep", "eval-sl2:1:1"]);
    assert_eq!(r.code, 1);
    assert!(r.json()["error"].as_str().unwrap().contains("auxiliary"));
    // ψ₀ inverts a symbolic evaluation point
    let r = qloop(&[
        "kmatrix", "verify-re", "--n", "1", "--gauge", "auxiliary", "--gamma", "1=1/g0", "--rep", "eval-sl2:1:a",
        "--rep", "eval-sl2:1:a",
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["check"]["pass"], false);
}

#[test]
fn vars_substitute_before_solving() {
    let r = qloop(&["--vars", "a=2,b=3", "rmatrix", "compute", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:1:b"]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["vars"]["a"], "2");
    let entry = parse_rat(j["r_matrix"]["matrix"][2][1].as_str().unwrap()).unwrap();
    assert_eq!(entry, parse_rat("(q^2 - 1)/(q^2 - 3/2*z)").unwrap());
}

#[test]
fn degeneration_points() {
    let r = qloop(&[
        "--vars", "a=1", "rmatrix", "degeneration", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:1:b", "--at",
        "b=q^2,z=1", "--at", "b=q^-2,z=1", "--at", "z=1",
    ]);
    assert_eq!(r.code, 0);
    let kinds: Vec<String> = r.json()["loci"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["kind"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(kinds, ["pole", "singular", "regular-invertible"]);
}

fn battery() -> Vec<Vec<&'static str>> {
    vec![
        vec!["gsat", "validate", "--n", "2", "--tau", "0,2,1"],
        vec!["rep", "build", "--rep", "eval-sl2:2:a"],
        vec!["rep", "build", "--rep", "trivial:2", "--rep", "vector-sl:3:a"],
        vec!["rep", "check", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:2:b"],
        vec!["rmatrix", "verify-ybe", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:1:b", "--rep", "eval-sl2:1:c"],
        vec!["rmatrix", "verify-unitarity", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:2:b"],
        vec!["kmatrix", "compute", "--n", "1", "--rep", "eval-sl2:2:a"],
        vec!["kmatrix", "compute", "--n", "2", "--X", "1,2", "--tau", "0,2,1", "--rep", "vector-sl:3:a"],
        vec!["kmatrix", "verify-gre", "--n", "1", "--tau", "1,0", "--gauge", "standard", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:1:b"],
        vec!["kmatrix", "verify-unitarity", "--n", "1", "--tau", "1,0", "--gamma", "1=1/g0", "--rep", "eval-sl2:2:a"],
        vec!["kmatrix", "convert-grading", "--n", "1", "--rep", "eval-sl2:1:a"],
        vec!["irred", "check", "--rep", "vector-sl:4:a"],
        vec!["irred", "check", "--mode", "generators", "--rep", "eval-sl2:3:a"],
        vec!["irred", "check", "--mode", "coideal", "--n", "1", "--rep", "eval-sl2:1:a"],
        vec!["irred", "check", "--rep", "eval-sl2:1:a", "--rep", "eval-sl2:1:b"],
    ]
}

#[test]
fn battery_passes_and_matches_schema() {
    let out = validator("output.schema.json");
    for args in battery() {
        let r = qloop(&args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stdout);
        assert_valid(&out, &r.json());
    }
}

#[test]
fn schema_rejects_malformed_output() {
    let out = validator("output.schema.json");
    let mut j = qloop(&["kmatrix", "compute", "--n", "1", "--rep", "eval-sl2:1:a"]).json();
    assert!(out.is_valid(&j));
    j["k_matrix"]["matrix"][0][0] = Value::from(1);
    assert!(!out.is_valid(&j));
    let mut g = qloop(&["gsat", "validate", "--n", "2", "--X", "1"]).json();
    g["violations"][0]["condition"] = Value::from("other");
    assert!(!out.is_valid(&g));
}

#[test]
fn output_is_byte_for_byte_deterministic() {
    for args in battery().into_iter().take(8) {
        for fmt in ["json", "text", "latex"] {
            let mut a = args.clone();
            a.extend(["--output", fmt]);
            let first = qloop(&a);
            let second = qloop(&a);
            assert_eq!(first.code, second.code);
            assert_eq!(first.stdout, second.stdout, "{a:?}");
        }
    }
}

#[test]
fn latex_and_text_forms() {
    let args = ["kmatrix", "compute", "--n", "1", "--tau", "1,0", "--rep", "eval-sl2:1:a"];
    let mut l = args.to_vec();
    l.extend(["--output", "latex"]);
    let latex = qloop(&l).stdout;
    assert!(latex.contains("\\begin{pmatrix}"));
    assert!(latex.contains("\\gamma_{0}"));
    let mut t = args.to_vec();
    t.extend(["--output", "text"]);
    let text = qloop(&t).stdout;
    assert!(text.starts_with("kmatrix compute: pass"));
    assert!(text.contains("kernel dimension 1"));
}
