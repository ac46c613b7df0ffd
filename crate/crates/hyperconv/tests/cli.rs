use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperconv"))
        .args(args)
        .current_dir(root())
        .env_remove("HYPERCONV_MAX_N")
        .output()
        .unwrap()
}

fn run_json(args: &[&str]) -> (Option<i32>, Json) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code(), json)
}

fn schema(name: &str) -> Json {
    serde_json::from_str(&std::fs::read_to_string(root().join("schemas").join(name)).unwrap()).unwrap()
}

fn report_validator() -> jsonschema::Validator {
    jsonschema::options()
        .with_resource(
            "urn:hyperconv:schema:space",
            jsonschema::Resource::from_contents(schema("space.schema.json")).unwrap(),
        )
        .build(&schema("report.schema.json"))
        .unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Json) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn hyper_table_for_q2() {
    let (code, out) =
        run_json(&["hyper", "fixtures/Q2.json", "--structure", "uK", "--filter", r#"{"kernel":[["0"]]}"#]);
    assert_eq!(code, Some(0));
    let values = &out["tables"][0]["values"];
    let at = |limit: &[&str]| {
        values.as_array().unwrap().iter().find(|v| v["limit"] == serde_json::json!(limit)).unwrap()["value"].clone()
    };
    assert_eq!(at(&["0"]), "1");
    assert_eq!(at(&["0", "1"]), "0");
}

#[test]
fn classify_q2_and_p3() {
    let (code, q2) = run_json(&["classify", "fixtures/Q2.json"]);
    assert_eq!(code, Some(0));
    assert_eq!(q2["approach"], true);
    assert_eq!(q2["non_archimedean"], true);
    let (_, p3) = run_json(&["classify", "fixtures/P3.json"]);
    assert_eq!((&p3["prap"], &p3["approach"]), (&Json::Bool(true), &Json::Bool(false)));
    assert_eq!((&p3["pretopological"], &p3["topological"]), (&Json::Bool(true), &Json::Bool(false)));
}

#[test]
fn tower_of_q2() {
    let (code, out) = run_json(&["tower", "fixtures/Q2.json"]);
    assert_eq!(code, Some(0));
    let thresholds: Vec<&str> =
        out["levels"].as_array().unwrap().iter().map(|l| l["threshold"].as_str().unwrap()).collect();
    assert_eq!(thresholds, ["0", "1", "inf"]);
}

#[test]
fn verify_reports_are_valid_and_pass() {
    let v = report_validator();
    let (code, report) = run_json(&["verify", "--suite", "all", "--max-n", "3", "--seed", "42"]);
    assert_eq!(code, Some(0));
    assert_eq!(report["status"], "pass");
    assert_valid(&v, &report);
}

#[test]
fn injected_fault_exits_one_with_witness() {
    let v = report_validator();
    let (code, report) =
        run_json(&["--inject", "tsub-inf", "verify", "--suite", "exhaustive", "--max-n", "2", "--checks", "values"]);
    assert_eq!(code, Some(1));
    assert_eq!(report["status"], "fail");
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["witnesses"].as_array().is_some_and(|w| !w.is_empty())));
    assert_valid(&v, &report);
}

#[test]
fn search_reports_are_valid() {
    let v = report_validator();
    for target in ["lK-vs-lV", "uF-vs-LuF", "strict-remark-inclusion"] {
        let (code, report) = run_json(&["search", "--target", target, "--max-n", "3"]);
        assert_eq!(code, Some(0));
        assert_valid(&v, &report);
    }
}

#[test]
fn fixtures_match_the_space_schema() {
    let v = jsonschema::validator_for(&schema("space.schema.json")).unwrap();
    for f in ["P3.json", "Q2.json"] {
        let doc: Json =
            serde_json::from_str(&std::fs::read_to_string(root().join("fixtures").join(f)).unwrap()).unwrap();
        assert_valid(&v, &doc);
    }
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["check", "fixtures/missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--max-n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--checks", "no.such.check"]).status.code(), Some(2));
    assert_eq!(run(&["hyper", "fixtures/P3.json", "--filter", r#"{"kernel":[["z"]]}"#]).status.code(), Some(2));
    let capped = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_hyperconv"))
            .args(["check", "fixtures/P3.json"])
            .current_dir(root())
            .env("HYPERCONV_MAX_N", n)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(capped("2"), Some(2));
    assert_eq!(capped("17"), Some(2));
    assert_eq!(capped("3"), Some(0));
}

#[test]
fn rejects_non_monotone_document() {
    let dir = std::env::temp_dir().join(format!("hyperconv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"kind": "conv", "carrier": ["a", "b"], "lim": [
            {"kernel": ["a"], "limit": ["a"]}, {"kernel": ["b"], "limit": ["b"]},
            {"kernel": ["a", "b"], "limit": ["a", "b"]}]}"#,
    )
    .unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("monotone"));
    std::fs::remove_dir_all(dir).unwrap();
}
