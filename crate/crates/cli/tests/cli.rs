use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn wmha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmha")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["id"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn groupoid_validate_exit_codes() {
    let ok = wmha(&["groupoid", "validate", path(&fixture("pair2_explicit.json"))]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = wmha(&["groupoid", "validate", path(&fixture("malformed.json"))]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("malformed.json:2:"));

    let broken = wmha(&["--json", "groupoid", "validate", path(&fixture("broken_compose.json"))]);
    assert_eq!(broken.status.code(), Some(1));
    let r = json_of(&broken);
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["id"] == "groupoid.compose_domain").unwrap();
    assert_eq!(c["status"], "fail");
    assert_eq!(c["witness"], "(p, q, pq) = (f, g, x)");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = wmha(&["groupoid", "validate", "/nonexistent/g.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wha_verifies_both_sides() {
    let out = wmha(&["--json", "wha", path(&fixture("s3.json")), "--side", "group", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert!(r["summary"]["total"].as_u64().unwrap() >= 30);
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["info"]["dim"], 6);

    let out = wmha(&["wha", path(&fixture("pair3.json")), "--side", "function", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_dump_fails_reverification() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("z3.json");
    let out = wmha(&["wha", path(&fixture("z3.json")), "--side", "group", "--out", path(&dump)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(wmha(&["wha", path(&dump), "--verify"]).status.code(), Some(0));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    v["counit"][1] = serde_json::json!("2");
    std::fs::write(&dump, v.to_string()).unwrap();
    let out = wmha(&["wha", path(&dump), "--verify"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("first failure"));
}

#[test]
fn double_pipeline_on_z2() {
    let out = wmha(&["--json", "double", path(&fixture("z2.json")), "--verify", "--qt", "--integrals"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["info"]["dim_double"], 4);
    assert_eq!(r["info"]["u_squared_is_one"], true);
    assert_eq!(r["info"]["drinfeld_u"], "δ_e⊗λ_e + δ_g⊗λ_g");
    assert_eq!(r["seed"], 0);
    assert!(r["digests"].as_object().unwrap().values().all(|d| d.as_str().unwrap().len() == 64));
    let ids = statuses(&r);
    assert!(ids.windows(2).all(|w| w[0].0 < w[1].0), "ids sorted and unique");
}

#[test]
fn double_on_pair2_has_dimension_four() {
    let out = wmha(&["--json", "double", path(&fixture("pair2.json")), "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["info"]["dim_double"], 4);
    assert_eq!(r["info"]["e_d_nnz"], 2);
}

#[test]
fn double_qt_on_s3() {
    let out = wmha(&["--json", "--threads", "2", "double", path(&fixture("s3.json")), "--qt"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["info"]["dim_double"], 36);
    assert_eq!(r["info"]["u_squared_is_one"], false);
}

#[test]
fn example_closed_forms_report_the_printed_antipode() {
    let out = wmha(&["--json", "double", path(&fixture("z3.json")), "--example"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    let s: std::collections::BTreeMap<_, _> = statuses(&r).into_iter().collect();
    assert_eq!(s["example.antipode"], "fail");
    assert_eq!(s["example.antipode_with_s_on_f"], "pass");
    assert_eq!(s["example.product"], "pass");

    let out = wmha(&["double", path(&fixture("z2.json")), "--example", "--dual", "group"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn double_dump_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("d.json");
    let first = wmha(&["--json", "double", path(&fixture("pair2.json")), "--verify", "--qt", "--out", path(&dump)]);
    assert_eq!(first.status.code(), Some(0));
    let second = wmha(&["--json", "double", path(&dump), "--verify", "--qt"]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(statuses(&json_of(&first)), statuses(&json_of(&second)));
}

#[test]
fn pairing_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    let out = wmha(&["--json", "pairing", path(&fixture("z3.json")), "--dual", "group", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let again = wmha(&["--json", "pairing", path(&file)]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(statuses(&json_of(&out)), statuses(&json_of(&again)));
}

#[test]
fn pairing_file_with_references() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("z2.json"), dir.path().join("g.json")).unwrap();
    let a = dir.path().join("a.json");
    assert_eq!(wmha(&["wha", path(&fixture("z2.json")), "--out", path(&a)]).status.code(), Some(0));
    let file = dir.path().join("p.json");
    let spec = serde_json::json!({
        "kind": "pairing",
        "a": "a.json",
        "b": {"groupoid": "g.json", "side": "group"},
        "form": {"rows": 2, "cols": 2, "columns": [{"0": "1"}, {"1": "1"}]},
    });
    std::fs::write(&file, spec.to_string()).unwrap();
    let out = wmha(&["--json", "pairing", path(&file)]);
    let r = json_of(&out);
    assert_eq!(out.status.code(), Some(0), "{r}");
    assert_eq!(r["digests"].as_object().unwrap().len(), 3);
}

#[test]
fn perturbed_pairing_form_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    assert_eq!(wmha(&["pairing", path(&fixture("z2.json")), "--out", path(&file)]).status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    v["form"]["columns"][1] = serde_json::json!({"1": "2"});
    std::fs::write(&file, v.to_string()).unwrap();
    assert_eq!(wmha(&["pairing", path(&file)]).status.code(), Some(1));
}

#[test]
fn yd_counts() {
    let out = wmha(&["--json", "yd", path(&fixture("z2.json")), "--dim", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!((r["info"]["yd_count"].clone(), r["info"]["double_count"].clone()), (4.into(), 4.into()));

    let r = json_of(&wmha(&["--json", "yd", path(&fixture("trivial.json"))]));
    assert_eq!(r["info"]["yd_count"], 1);

    let out = wmha(&["yd", path(&fixture("z2.json")), "--dim", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(wmha(&["yd", path(&fixture("z2.json")), "--dim", "2"]).status.code(), Some(2));
}

#[test]
fn non_dual_pairing_is_refused_by_yd() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    assert_eq!(wmha(&["pairing", path(&fixture("z2.json")), "--out", path(&file)]).status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    v["form"]["columns"][0] = serde_json::json!({"0": "2"});
    std::fs::write(&file, v.to_string()).unwrap();
    assert_eq!(wmha(&["yd", path(&file)]).status.code(), Some(2));
}
