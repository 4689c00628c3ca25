use std::process::{Command, Output};

use serde_json::Value;

fn pnilp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnilp"))
        .args(args)
        .env_remove("PNILP_ENUM_CAP")
        .env_remove("PNILP_TUPLE_CAP")
        .output()
        .unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn order_of_group_72() {
    let out = pnilp(&["order", "group_72"]);
    assert!(out.status.success());
    let v = &lines(&out)[0];
    assert_eq!(v["order"], 72);
    assert_eq!(v["predicates"]["is_soluble"], true);
}

#[test]
fn series_of_sym4() {
    let out = pnilp(&["series", "symmetric(4)", "--kind", "derived"]);
    assert_eq!(lines(&out)[0]["orders"], serde_json::json!([24, 12, 4, 1, 1]));
}

#[test]
fn check_p_reports_witness() {
    let out = pnilp(&["check-p", "group_72", "gamma:2", "-p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    assert_eq!(r["holds"], false);
    assert_eq!(r["witness"]["product_order"], 2);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 9);
}

#[test]
fn theorem_commands_exit_zero_on_agreement() {
    let out = pnilp(&["theorem-a", "alternating(5)", "-k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).len(), 3);
    let out = pnilp(&["theorem-b", "alternating(5)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out).iter().all(|r| r["skipped"] == true));
}

#[test]
fn values_and_pnilp() {
    let out = pnilp(&["values", "alternating(5)", "pow:15"]);
    let v = &lines(&out)[0];
    assert_eq!(v["count"], 16);
    assert_eq!(v["verbal_order"], 60);
    let out = pnilp(&["pnilp", "symmetric(3)"]);
    let rows = lines(&out);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["p_nilpotent"] == r["by_core"] && r["p_nilpotent"] == r["frobenius"]));
}

#[test]
fn counterexamples_name_the_matching_reading() {
    let out = pnilp(&["counterexamples"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).len(), 9);
    assert!(String::from_utf8_lossy(&out.stderr).contains("disjoint_transpositions"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(pnilp(&["order", "nonsense(3)"]).status.code(), Some(2));
    assert_eq!(pnilp(&["check-p", "symmetric(3)", "[x1,", "-p", "2"]).status.code(), Some(2));
    assert_eq!(pnilp(&["check-p", "symmetric(3)", "x1", "-p", "4"]).status.code(), Some(2));
    assert_eq!(pnilp(&["bogus"]).status.code(), Some(2));
    assert_eq!(pnilp(&["--enum-cap", "10", "order", "symmetric(4)"]).status.code(), Some(2));
}

#[test]
fn sweep_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    std::fs::write(
        &path,
        r#"{"groups": ["symmetric(4)", "group_72"], "checks": ["theorem_gamma", "theorem_delta"], "ks": [2, 3]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let par = pnilp(&["sweep", "--config", p]);
    assert_eq!(par.status.code(), Some(0));
    let ser = pnilp(&["sweep", "--config", p, "--serial"]);
    let strip = |o: &Output| -> Vec<Value> {
        lines(o)
            .into_iter()
            .map(|mut v| {
                v["ms"] = 0.into();
                v
            })
            .collect()
    };
    assert_eq!(strip(&par), strip(&ser));
    assert!(String::from_utf8_lossy(&par.stderr).contains("mismatches 0"));

    std::fs::write(&path, "{}").unwrap();
    let empty = pnilp(&["sweep", "--config", p]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(empty.stdout.is_empty());

    std::fs::write(&path, r#"{"groups": ["missing(1)"], "checks": ["P"]}"#).unwrap();
    assert_eq!(pnilp(&["sweep", "--config", p]).status.code(), Some(2));
    std::fs::write(&path, r#"{"primes": [6]}"#).unwrap();
    assert_eq!(pnilp(&["sweep", "--config", p]).status.code(), Some(2));
}

#[test]
fn catalog_writes_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let g72 = dir.path().join("g72.json");
    let out = pnilp(&["catalog", "--g72", g72.to_str().unwrap()]);
    assert!(out.status.success());
    let shipped = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/g72.json");
    assert_eq!(std::fs::read_to_string(g72).unwrap(), std::fs::read_to_string(shipped).unwrap());
    let out = pnilp(&["order", shipped]);
    assert_eq!(lines(&out)[0]["order"], 72);
}

#[test]
fn pretty_table() {
    let out = pnilp(&["--pretty", "frobenius", "alternating(5)", "-p", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("check"));
    assert!(text.contains("fails"));
}
