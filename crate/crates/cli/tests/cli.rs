use std::path::PathBuf;
use std::process::Command;

use parafermion_cli::{run, Outcome, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn paraf(args: &[&str]) -> Outcome {
    run(std::iter::once("paraf").chain(args.iter().copied()))
}

fn json_of(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", out.stdout))
}

#[test]
fn fuse_example() {
    let out = paraf(&["fuse", "-k", "5", "1,0", "1,0"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(out.stdout.trim(), "M[5,4] + M[2,0]");
}

#[test]
fn fuse_json_lists_terms() {
    let out = paraf(&["fuse", "--level", "5", "1,0", "1,0", "--format", "json"]);
    let v = json_of(&out);
    let terms = v["product"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["label"]["i"], 5);
    assert_eq!(terms[0]["multiplicity"], 1);
}

#[test]
fn fuse_rejects_bad_labels() {
    let out = paraf(&["fuse", "-k", "5", "1;0", "1,0"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("1;0"));
    let out = paraf(&["fuse", "-k", "5", "7,0", "1,0"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(paraf(&[]).code, EXIT_USAGE);
    assert_eq!(paraf(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(paraf(&["fuse", "-k", "5", "1,0"]).code, EXIT_USAGE);
    assert_eq!(paraf(&["weights", "-k", "5", "--no-such-flag"]).code, EXIT_USAGE);
    assert_eq!(paraf(&["weights", "-k", "5", "--format", "xml"]).code, EXIT_USAGE);
    assert_eq!(paraf(&["weights", "-k", "1"]).code, EXIT_USAGE);
    assert_eq!(paraf(&["--help"]).code, EXIT_PASS);
}

#[test]
fn weights_table() {
    let out = paraf(&["weights", "-k", "3", "--format", "json"]);
    let v = json_of(&out);
    let mods = v["modules"].as_array().unwrap();
    assert_eq!(mods.len(), 6);
    let identity = mods.iter().find(|m| m["label"]["i"] == 3 && m["label"]["j"] == 0).unwrap();
    assert_eq!(identity["weight"], "0/1");
    assert_eq!(identity["sigma_type"], true);
}

#[test]
fn verification_commands_pass() {
    for args in [
        vec!["zk-check", "-k", "6"],
        vec!["sigma-check", "-k", "5"],
        vec!["orbifold-table", "-k", "6"],
        vec!["lift-order", "-k", "5"],
        vec!["quotient", "-k", "5"],
    ] {
        let out = paraf(&args);
        assert_eq!(out.code, EXIT_PASS, "{args:?}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn report_json_round_trips() {
    let out = paraf(&["sigma-check", "-k", "4", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["status"], "pass");
    let report: parafermion::Report = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
}

#[test]
fn identical_runs_give_identical_output() {
    let a = paraf(&["orbifold-table", "-k", "5", "--format", "json"]);
    let b = paraf(&["orbifold-table", "-k", "5", "--format", "json"]);
    assert_eq!(a, b);
    let v = json_of(&a);
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(again.trim(), a.stdout.trim());
}

#[test]
fn coxeter_quotient_orders() {
    for k in 3..=8 {
        let out = paraf(&["quotient", "-k", &k.to_string(), "--format", "json"]);
        let v = json_of(&out);
        assert_eq!(v["order"], k.to_string());
        assert_eq!(v["dual_order"], k.to_string());
    }
}

#[test]
fn lattice_loading() {
    let out = paraf(&["lattice-info", &data("a1.json"), "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS);
    let v = json_of(&out);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["determinant"], "2/1");
    assert_eq!(v["minimal_vectors"], 2);

    let out = paraf(&["lattice-info", &data("a2_dual.json"), "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["minimum"], "2/3");
    assert_eq!(v["integral"], false);
}

#[test]
fn asymmetric_gram_names_the_cell() {
    let out = paraf(&["lattice-info", &data("asymmetric.json")]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("/gram/0/1"), "{}", out.stderr);
    assert!(out.stderr.contains("(0,1)"), "{}", out.stderr);

    let out = paraf(&["lattice-info", &data("asymmetric.json"), "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["pointer"], "/gram/0/1");
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = paraf(&["lattice-info", &data("no_such_file.json")]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn builtin_root_lattices() {
    let out = paraf(&["lattice-info", "--builtin", "E8", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["minimal_vectors"], 240);
    assert_eq!(v["discriminant_invariants"], serde_json::json!([]));
    let out = paraf(&["lattice-info", "--builtin", "A4", "--format", "json"]);
    assert_eq!(json_of(&out)["discriminant_invariants"], serde_json::json!(["5"]));
    assert_eq!(paraf(&["lattice-info", "--builtin", "E9"]).code, EXIT_USAGE);
}

#[test]
fn rssd_and_quotient_files() {
    let out = paraf(&["rssd", &data("a2_root.json"), "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS);
    let v = json_of(&out);
    assert_eq!(v["involution"], serde_json::json!([["-1/1", "0/1"], ["1/1", "1/1"]]));

    let out = paraf(&["rssd", &data("z2_not_rssd.json")]);
    assert_eq!(out.code, EXIT_FAIL);

    let out = paraf(&["quotient", &data("a2_index3.json"), "--format", "json"]);
    assert_eq!(json_of(&out)["invariant_factors"], serde_json::json!(["3"]));

    let out = paraf(&["quotient", &data("a2_root.json")]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn code_files() {
    let out = paraf(&["lc-verify", &data("code_p3.json"), "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    let v = json_of(&out);
    assert_eq!(v["payload"]["code"]["size"], 2);
    assert_eq!(v["payload"]["lattice"]["determinant"], "36/1");

    let out = paraf(&["lc-verify", &data("code_bad_length.json")]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("/generators/0"), "{}", out.stderr);
}

#[test]
fn builtin_5b_case_study() {
    let out = paraf(&["lc-verify", "--builtin", "5B"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.contains("{0:1, 4:130, 6:120, 8:5}"));

    let out = paraf(&["lc", "verify", "--builtin", "5b", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["code"]["weight_distribution"]["4"], 130);

    assert_eq!(paraf(&["lc-verify", "--builtin", "7Z"]).code, EXIT_USAGE);
}

fn golden_source() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/golden")
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("paraf-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for entry in std::fs::read_dir(golden_source()).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
    }
    dir
}

#[test]
fn u5a_table_cell_five_five() {
    let out = paraf(&["u5a", "table", "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS);
    let v = json_of(&out);
    let cells = v["fusion"].as_array().unwrap();
    assert_eq!(cells.len(), 45);
    let c55 = cells.iter().find(|c| c["i"] == 5 && c["j"] == 5).unwrap();
    assert_eq!(c55["product"], serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7, 8]));
    assert_eq!(v["modules"][1]["weight"], "6/7");
    assert_eq!(v["modules"][5]["dimension"], 5);
}

#[test]
fn u5a_verify_with_golden_dir() {
    let dir = scratch_dir("good");
    let out = paraf(&["u5a", "verify", "--golden-dir", dir.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);

    let bad = scratch_dir("bad");
    let path = bad.join("u5a_fusion.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    let cell = v["products"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|c| c["i"] == 3 && c["j"] == 4)
        .unwrap();
    cell["product"] = serde_json::json!([1, 4]);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = paraf(&["u5a", "--golden-dir", bad.to_str().unwrap(), "verify"]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("3 ⊠ 4"), "{}", out.stdout);

    let empty = std::env::temp_dir().join(format!("paraf-cli-empty-{}", std::process::id()));
    std::fs::create_dir_all(&empty).unwrap();
    let out = paraf(&["u5a", "verify", "--golden-dir", empty.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_paraf");
    let ok = Command::new(bin).args(["fuse", "-k", "5", "1,0", "1,0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "M[5,4] + M[2,0]");
    let fail = Command::new(bin).args(["rssd", &data("z2_not_rssd.json")]).output().unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_FAIL));
    let usage = Command::new(bin).args(["fuse", "--bogus"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    assert!(usage.stdout.is_empty());
    assert!(!usage.stderr.is_empty());
}
