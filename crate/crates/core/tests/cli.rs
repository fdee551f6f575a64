use std::process::Command;

use leadrace::cli::{run, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VERIFICATION};
use serde_json::Value;

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["leadrace"];
    full.extend_from_slice(args);
    let out = run(full);
    let v = serde_json::from_str(&out.text).unwrap_or_else(|e| panic!("{e}: {}", out.text));
    (v, out.exit_code)
}

#[test]
fn formula_lead() {
    let (v, code) = json(&["formula", "lead", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"], "5/16");
    assert_eq!(v["status"], "ok");
}

#[test]
fn bijection_worked_example() {
    let (v, _) = json(&["bijection", "updown", "--path", "UUDUDDDDUUDUUUDD"]);
    assert_eq!(v["result"], "UUDUDDUUDUUUUUDD");
    let (v, _) = json(&["bijection", "updown-inverse", "--path", "UUDUDDUUDUUUUUDD"]);
    assert_eq!(v["result"], "UUDUDDDDUUDUUUDD");
    let (v, _) = json(&["bijection", "motzkin", "--path", "UUUUDDDUDU"]);
    assert_eq!(v["result"], "UHDH");
    let (v, _) = json(&["bijection", "encode", "--set", "3,1,2"]);
    assert_eq!(v["result"], "00110");
    let (v, _) = json(&["bijection", "decode", "--path", "00110"]);
    assert_eq!(v["result"], "(3,1,2)");
    let (v, _) = json(&["bijection", "spitzer", "--set", "3/10,-7/10,4/10"]);
    assert_eq!(v["result"], 3);
}

#[test]
fn enumerate_ballot() {
    let (v, code) = json(&["enumerate", "ballot", "--set", "9,3,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"], 15);
}

#[test]
fn enumerate_variants() {
    assert_eq!(json(&["enumerate", "generic", "--set", "1,3,9"]).0["result"], true);
    assert_eq!(json(&["enumerate", "generic", "--set", "1,2"]).0["result"], false);
    let (v, _) = json(&["enumerate", "collisions", "--set", "5,3,1", "--target", "1/2"]);
    assert_eq!(v["result"], serde_json::json!(["4/1", "3/1", "2/1", "1/1"]));
    assert_eq!(json(&["enumerate", "majorization", "--n", "3"]).0["result"], "5/8");
    assert_eq!(json(&["enumerate", "dominance", "--m", "3"]).0["result"], 5);
    assert_eq!(json(&["enumerate", "rank-oracle", "--n", "2"]).0["result"], "1/8");
    assert_eq!(json(&["enumerate", "paths", "--n", "4"]).0["result"], 6);
    assert_eq!(json(&["enumerate", "paths", "--n", "4", "--t", "0"]).0["result"], 2);
    assert_eq!(json(&["enumerate", "motzkin-paths", "--L", "2"]).0["result"], "5/8");
}

#[test]
fn formula_variants() {
    let cases: &[(&[&str], &str)] = &[
        (&["formula", "tied-lead", "--m", "4"], "1/4"),
        (&["formula", "srw", "--n", "3"], "3/8"),
        (&["formula", "ballot", "--a", "2", "--b", "1"], "2/3"),
        (&["formula", "walk-given-end", "--n", "4", "--t", "0"], "1/3"),
        (&["formula", "motzkin", "--L", "1"], "3/4"),
        (&["formula", "majorization", "--n", "2"], "3/4"),
        (&["formula", "alternation", "--n", "2"], "1/16"),
        (&["formula", "comparable", "--n", "3"], "1/4"),
    ];
    for (args, want) in cases {
        assert_eq!(json(args).0["result"], *want, "{args:?}");
    }
    assert_eq!(json(&["formula", "ballot-count", "--n", "3"]).0["result"], 15);
    // exceeds u64, serialized as a decimal string
    assert_eq!(
        json(&["formula", "ballot-count", "--n", "40"]).0["result"],
        "79777941814291672401518892224505807820921910393015244140625"
    );
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(json(&["formula", "lead"]).1, EXIT_USAGE);
    assert_eq!(json(&["enumerate", "ballot", "--set", "1,x"]).1, EXIT_USAGE);
    assert_eq!(json(&["simulate", "lead", "--n", "2", "--seed", "abc"]).1, EXIT_USAGE);
    let out = run(["leadrace", "frobnicate"]);
    assert_eq!(out.exit_code, EXIT_USAGE);
    assert!(out.to_stderr);
    let out = run(["leadrace", "formula", "lead", "--n", "notanumber"]);
    assert_eq!(out.exit_code, EXIT_USAGE);
}

#[test]
fn precondition_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["formula", "lead", "--n", "0"],
        &["formula", "ballot", "--a", "1", "--b", "2"],
        &["formula", "walk-given-end", "--n", "4", "--t", "1"],
        &["enumerate", "ballot", "--set", "1,2,3"],
        &["enumerate", "ballot", "--set", "1,3,9,27,81,243,729,2187,6561,19683,59049"],
        &["enumerate", "rank-oracle", "--n", "5"],
        &["bijection", "updown", "--path", "UU"],
        &["bijection", "spitzer", "--set", "1,1"],
        &["simulate", "multiplicative", "--n", "2", "--dist", "exp"],
        &["simulate", "lead", "--n", "2", "--dist", "exp", "--dist-params", "-1"],
    ];
    for args in cases {
        let (v, code) = json(args);
        assert_eq!(code, EXIT_PRECONDITION, "{args:?}");
        assert_eq!(v["status"], "error");
        assert!(v["error"].is_string());
    }
}

#[test]
fn max_n_lifts_and_lowers_caps() {
    assert_eq!(json(&["enumerate", "rank-oracle", "--n", "5", "--max-n", "5"]).0["result"], "1/3840");
    assert_eq!(json(&["enumerate", "majorization", "--n", "3", "--max-n", "2"]).1, EXIT_PRECONDITION);
}

#[test]
fn verification_failure_exits_three() {
    // 7 - 4 = 4 - 1: the collision at 3 comes from two index-set pairs
    let (v, code) = json(&["enumerate", "collisions", "--set", "19/2,1,4,7", "--target", "5/2"]);
    assert_eq!(code, EXIT_VERIFICATION, "{v}");
    assert_eq!(v["status"], "error");
}

#[test]
fn simulate_report_has_estimate_fields() {
    let (v, code) = json(&["simulate", "lead", "--n", "2", "--trials", "20000", "--seed", "5"]);
    assert_eq!(code, EXIT_OK);
    for key in ["seed", "trials", "ci_low", "ci_high", "ties"] {
        assert!(!v[key].is_null(), "{key}");
    }
    assert_eq!(v["seed"], 5);
    assert_eq!(v["trials"], 20000);
    let (v, _) = json(&["formula", "lead", "--n", "2"]);
    assert!(v.get("ci_low").is_none());
}

#[test]
fn random_seed_is_echoed() {
    let (v, code) = json(&["simulate", "lead", "--n", "1", "--trials", "100", "--seed", "random"]);
    assert_eq!(code, EXIT_OK);
    assert!(v["seed"].is_u64());
}

#[test]
fn ties_produce_warning_status() {
    let (v, code) = json(&[
        "simulate", "lead", "--n", "1", "--trials", "2000", "--dist", "pow3", "--dist-params", "2,0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["status"], "warning");
    assert!(v["ties"].as_u64().unwrap() > 0);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["leadrace", "simulate", "alternation", "--n", "3", "--dist", "normal", "--trials", "30000", "--seed", "42"];
    assert_eq!(run(args).text, run(args).text);
    let csv = ["leadrace", "simulate", "tied", "--m", "3", "--trials", "5000", "--format", "csv"];
    assert_eq!(run(csv).text, run(csv).text);
}

#[test]
fn csv_has_header_and_one_row() {
    let out = run(["leadrace", "formula", "lead", "--n", "3", "--format", "csv"]);
    let lines: Vec<&str> = out.text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "command,params,result,status,seed,trials,ci_low,ci_high,ties,elapsed_ms");
    assert!(lines[1].starts_with("formula lead,"));
    assert!(lines[1].contains(",5/16,ok,"));
}

#[test]
fn text_format_respects_no_color_flag() {
    let out = run(["leadrace", "formula", "lead", "--n", "1", "--format", "text"]);
    assert!(out.text.contains("result: 1/2"));
}

#[test]
fn timing_is_opt_in() {
    let (v, _) = json(&["formula", "lead", "--n", "2"]);
    assert!(v["elapsed_ms"].is_null());
    let (v, _) = json(&["formula", "lead", "--n", "2", "--timing"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn verify_formulas_and_bijections_pass() {
    for scope in ["formulas", "bijections"] {
        let (v, code) = json(&["verify", "--scope", scope]);
        assert_eq!(code, EXIT_OK, "{v}");
        assert_eq!(v["result"]["failed"], 0);
        assert!(v["result"]["passed"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_budget_skips_rather_than_runs() {
    let (v, code) = json(&["verify", "--scope", "invariance", "--budget", "0.000001"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["passed"], 0);
    assert_eq!(v["result"]["skipped"], 30);
    assert_eq!(json(&["verify", "--budget", "0"]).1, EXIT_PRECONDITION);
}

#[test]
fn experiment_alternation_rows() {
    let (v, code) = json(&["experiment", "alternation", "--n", "2", "--trials", "20000"]);
    assert_eq!(code, EXIT_OK);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["exponential"]["exact"], "1/16");
    assert_eq!(rows[1]["powers_of_three"]["rank_oracle"], "1/8");
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_leadrace");
    let ok = Command::new(bin).args(["formula", "lead", "--n", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), r#"{"command":"formula lead","params":{"n":3},"result":"5/16","status":"ok","elapsed_ms":null}"#);
    let usage = Command::new(bin).args(["nope"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    assert!(!usage.stderr.is_empty());
    let pre = Command::new(bin).args(["formula", "lead", "--n", "0"]).output().unwrap();
    assert_eq!(pre.status.code(), Some(2));
    let ver = Command::new(bin)
        .args(["enumerate", "collisions", "--set", "19/2,1,4,7", "--target", "5/2"])
        .output()
        .unwrap();
    assert_eq!(ver.status.code(), Some(3));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    let text = Command::new(bin)
        .args(["formula", "lead", "--n", "1", "--format", "text"])
        .env("NO_COLOR", "1")
        .output()
        .unwrap();
    assert!(!String::from_utf8_lossy(&text.stdout).contains('\x1b'));
}
