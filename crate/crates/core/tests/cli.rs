use num_rational::BigRational;
use serde_json::Value;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subordkit")).args(args).output().expect("spawn subordkit")
}

fn json_out(args: &[&str]) -> (i32, Value) {
    let o = bin(args);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)));
    (o.status.code().unwrap(), v)
}

#[test]
fn harmonic_mean_example() {
    let (code, v) = json_out(&["means-eval", "--t", "0.5", "--x", "1", "--y", "3", "--mean", "harmonic"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"][0].as_f64().unwrap(), 1.5);
    assert_eq!(v["value"][1].as_f64().unwrap(), 0.0);
}

#[test]
fn geometric_mean_of_negative_real_is_branch_cut() {
    let o = bin(&["means-eval", "--t", "0.5", "--x", "-1", "--y", "3", "--mean", "geometric"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn janowski_reference_tuple() {
    let (code, v) = json_out(&["janowski", "check", "--A", "3/8", "--B", "0", "--D", "1", "--E", "123/128"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_hold"], true);
    assert_eq!(v["tuple"]["E"], "123/128");
    assert_eq!(v["cond4"]["margin"], "1/2048");
    let fb = v["final_bound"]["float"].as_f64().unwrap();
    assert!((fb - 1.000326).abs() < 5e-7);
}

#[test]
fn janowski_rejects_bad_tuple() {
    assert_eq!(bin(&["janowski", "check", "--A", "1/2", "--B", "-1/2", "--D", "1", "--E", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["janowski", "check", "--A", "x", "--B", "0", "--D", "1", "--E", "1/2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["threshold", "--alpha", "0.2"]).status.code(), Some(2));
    assert_eq!(bin(&["threshold", "--alpha", "0.2", "--rho", "0.5", "--theorem", "2.11"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"suite": "quick", "bogus": 1}"#).unwrap();
    let o = bin(&["--config", bad.to_str().unwrap(), "verify-paper"]);
    assert_eq!(o.status.code(), Some(2));
    let missing = dir.path().join("none.json");
    assert_eq!(bin(&["--config", missing.to_str().unwrap(), "verify-paper"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_subordkit"))
        .env("SUBORDKIT_THREADS", "zero")
        .args(["means-eval", "--t", "0.5", "--x", "1", "--y", "3", "--mean", "arithmetic"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_expression_exits_2() {
    let o = bin(&["subcheck", "--domain", "exp", "--p", r#"{"op": "nope"}"#]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["subcheck", "--domain", "exp", "--p", "/nonexistent/p.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn subcheck_verdicts() {
    let id = r#"{"op": "moebius", "params": {"A": 1, "B": -1}}"#;
    let (code, v) = json_out(&["subcheck", "--domain", "halfplane(0)", "--p", id, "--n", "256"]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    // (1+z)/(1−z) escapes the half-plane Re w > 1/2
    let (code, v) = json_out(&["subcheck", "--domain", "halfplane(1/2)", "--p", id, "--n", "256"]);
    assert_eq!(code, 1);
    assert_eq!(v["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn falsify_report_shape() {
    let (code, v) = json_out(&["--seed", "7", "subcheck", "--domain", "halfplane(0)", "--falsify", "--budget", "50", "--n", "256"]);
    assert_eq!(code, 0);
    assert!(v["premise_rate"].as_f64().unwrap() > 0.0);
    assert!(v["violations"].as_array().unwrap().is_empty());
    assert_eq!(v["grids"]["n"], 256);
    assert_eq!(v["seed"], 7);
}

#[test]
fn out_dir_receives_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["--out", dir.path().to_str().unwrap(), "threshold", "--alpha", "0.25", "--rho", "0.5", "--gamma", "0.5", "--theorem", "29"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("threshold.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["theorem"], "29");
    assert_eq!(v["branches"].as_array().unwrap().len(), 4);
    assert_eq!(v["branches"][0]["value"].as_f64().unwrap(), 0.625);
}

#[test]
fn threshold_oracle_passes_in_i1_cell() {
    let (code, v) = json_out(&["threshold", "--alpha", "0.25", "--rho", "0.5", "--theorem", "210", "--oracle"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["oracle"]["worst_margin"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn boundary_export_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["--out", dir.path().to_str().unwrap(), "export", "--what", "boundary", "--domain", "sigmoid"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("boundary-sigmoid.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,re,im"));
    assert_eq!(lines.count(), 4096);
    assert!(!text.contains('\r'));
}

#[test]
fn admissibility_export_json_schema() {
    let (code, v) = json_out(&[
        "export", "--what", "admissibility", "--format", "json", "--case", "sqrt", "--omega", "sigmoid", "--theta-n", "32", "--m-max", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["columns"], serde_json::json!(["theta", "m", "re", "im", "verdict"]));
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        let r = r.as_array().unwrap();
        assert_eq!(r.len(), 5);
        assert!([0, 2, 3].iter().all(|&i| r[i].is_number()));
        assert!(r[1].is_number() || r[1] == "inf");
        assert!(["clear", "boundary-contact", "violation"].contains(&r[4].as_str().unwrap()));
    }
}

#[test]
fn feasibility_export_round_trips_rationals() {
    let (code, v) = json_out(&["export", "--what", "feasibility", "--format", "json", "--k-max", "20"]);
    assert_eq!(code, 0);
    let feasible = v["result"]["feasible"].as_array().unwrap();
    assert!(!feasible.is_empty());
    for t in feasible {
        for key in ["a", "b", "d", "e", "cond3_value", "cond4_margin", "final_bound"] {
            let s = t[key].as_str().unwrap();
            let q: BigRational = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
    }
    let again = json_out(&["export", "--what", "feasibility", "--format", "json", "--k-max", "20"]).1;
    assert_eq!(again, v);
}

#[test]
fn admissibility_violations_exit_1() {
    let o = bin(&["admissibility", "--case", "exp", "--theta-n", "64", "--m-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["admissibility", "--case", "sqrt", "--omega", "sigmoid", "--theta-n", "64", "--m-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn apply_identity_function() {
    let (code, v) = json_out(&[
        "apply", "--corollary", "fz39", "--f", r#"{"op": "identity"}"#, "--params",
        r#"{"gamma": 0.5, "alpha": 0.2, "mu": 0.5, "delta": 1, "rho": 0.3}"#, "--n", "64",
    ]);
    assert_eq!(code, 0);
    assert!((v["report"]["premise_min"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn quick_verify_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"suite": "quick", "seed": 99}"#).unwrap();
    let a = bin(&["--config", cfg.to_str().unwrap(), "verify-paper"]);
    let b = bin(&["--config", cfg.to_str().unwrap(), "verify-paper"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["environment"]["seed"], 99);
    assert!(v["cases"].as_array().unwrap().iter().all(|c| ["paper", "trivial", "derived"].contains(&c["expected"]["provenance"].as_str().unwrap())));
}
