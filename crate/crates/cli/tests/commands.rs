use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kvassoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kvassoc")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn terms(doc: &Value) -> Vec<(String, String)> {
    doc["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["basis_key"].as_str().unwrap().to_string(), t["coeff"].as_str().unwrap().to_string()))
        .collect()
}

fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
    items.iter().map(|(k, c)| (k.to_string(), c.to_string())).collect()
}

#[test]
fn bch_degree_two() {
    let out = kvassoc(&["bch", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["kind"], "lie");
    assert_eq!(doc["max_degree"], 2);
    assert_eq!(terms(&doc), pairs(&[("x1", "1"), ("x2", "1"), ("x1x2", "1/2")]));
    let scaled = stdout_json(&kvassoc(&["bch", "--degree", "3", "--scale", "2"]));
    assert!(terms(&scaled).contains(&("x1x1x2".to_string(), "1/3".to_string())));
}

#[test]
fn dims_and_cohomology_tables() {
    let out = kvassoc(&["dims", "--which", "hkv2", "--max-degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout_json(&out);
    assert_eq!(table["truncation_degree"], 1);
    assert_eq!(table["rows"][0]["degree"], 1);
    assert_eq!(table["rows"][0]["dim"], 1);

    let out = kvassoc(&["cohomology", "--which", "delta-lie", "--arity", "2", "--max-degree", "3"]);
    let rows = stdout_json(&out)["rows"].as_array().unwrap().clone();
    let kernels: Vec<u64> = rows.iter().map(|r| r["kernel"].as_u64().unwrap()).collect();
    assert_eq!(kernels, [0, 1, 0]);

    let out = kvassoc(&["cohomology", "--which", "d-dert", "--arity", "3", "--max-degree", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert_eq!(last.split_whitespace().collect::<Vec<_>>(), ["2", "3", "2", "1"]);
}

#[test]
fn verify_exit_codes() {
    let out = kvassoc(&["verify", "--suite", "yangbaxter", "--degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["pass"], true);
    assert_eq!(rep["truncation_degree"], 6);
    for suite in ["cocycles", "pentagon", "hexagon", "grt", "dpsi", "pipeline"] {
        let out = kvassoc(&["verify", "--suite", suite, "--degree", "4"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
    }
    assert_eq!(kvassoc(&["verify", "--suite", "pipeline", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(kvassoc(&["verify", "--suite", "nope", "--degree", "3"]).status.code(), Some(2));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn associator_to_duflo() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.json");
    let f = dir.path().join("F.json");
    let (phi, f) = (phi.to_str().unwrap(), f.to_str().unwrap());
    assert_eq!(kvassoc(&["associator", "--degree", "4", "--out", phi]).status.code(), Some(0));

    let out = kvassoc(&["kv-solve", "--associator", phi, "--s", "1", "--out", f]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["is_solution"], true);
    assert_eq!(rep["truncation_degree"], 4);
    assert_eq!(rep["duflo"]["status"], "solved");
    let want = pairs(&[("x1^2", "1/48"), ("x1^4", "-1/5760")]);
    assert_eq!(terms(&rep["duflo"]["series"]), want);

    for (from, input) in [("F", f), ("phi", phi)] {
        let out = kvassoc(&["duflo", "--from", from, "--in", input, "--degree", "4"]);
        assert_eq!(out.status.code(), Some(0));
        let even: Vec<_> = terms(&stdout_json(&out)).into_iter().filter(|(k, _)| k == "x1^2" || k == "x1^4").collect();
        assert_eq!(even, want);
    }
    let out = kvassoc(&["duflo", "--from", "F", "--in", f, "--degree", "9"]);
    assert_eq!(out.status.code(), Some(2));

    // π(φ₂) = 1/8 does not match the s = 2 normalization
    let out = kvassoc(&["kv-solve", "--associator", phi, "--s", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kvassoc(&["kv-solve", "--associator", f, "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_documents_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"kind":"taut_log","generators":3,"max_degree":3,"terms":[{"basis_key":"slot:1|x2x1","coeff":"1"}]}"#,
    );
    let out = kvassoc(&["kv-solve", "--associator", &bad, "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("slot:1|x2x1"), "{err}");
    let junk = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(kvassoc(&["duflo", "--from", "phi", "--in", &junk, "--degree", "2"]).status.code(), Some(2));
    assert_eq!(kvassoc(&["bch"]).status.code(), Some(2));
}

#[test]
fn perturbed_associator_is_obstructed() {
    let dir = tempfile::tempdir().unwrap();
    let out = kvassoc(&["associator", "--degree", "4"]);
    let mut doc = stdout_json(&out);
    let keys: Vec<String> = terms(&doc).into_iter().map(|(k, _)| k).collect();
    assert!(!keys.contains(&"slot:1|x1x2x2".to_string()));
    doc["terms"].as_array_mut().unwrap().push(serde_json::json!({"basis_key": "slot:1|x1x2x2", "coeff": "1"}));
    let path = write(dir.path(), "perturbed.json", &doc.to_string());
    let out = kvassoc(&["kv-solve", "--associator", &path, "--s", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("OBSTRUCTED"));
}
