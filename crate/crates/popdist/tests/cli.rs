//! End-to-end tests of the `popdist` binary: output formats, exit codes,
//! determinism.

use std::process::{Command, Output};

fn popdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popdist"))
        .args(args)
        .env_remove("POPDIST_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn enumerate_text_output() {
    let out = popdist(&["enumerate", "--n", "3", "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "132\n231\n312\n321\n");

    let out = popdist(&["enumerate", "--n", "0"]);
    assert_eq!(stdout(&out), "ε\n");

    let out = popdist(&["enumerate", "--n", "4"]);
    assert_eq!(stdout(&out).lines().count(), 22);
}

#[test]
fn enumerate_json_and_explicit_pop() {
    let out = popdist(&["enumerate", "--n", "3", "--k", "3", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["schema"], "popdist/1");
    assert_eq!(json["count"], 4);
    assert_eq!(json["perms"][0], "132");

    // the same flat POP given explicitly as JSON
    let out2 = popdist(&[
        "enumerate",
        "--n",
        "3",
        "--pop",
        r#"{"size":3,"relations":[[1,3],[2,3]]}"#,
        "--format",
        "json",
    ]);
    let json2: serde_json::Value = serde_json::from_str(&stdout(&out2)).unwrap();
    assert_eq!(json["perms"], json2["perms"]);
}

#[test]
fn solve_counting_and_full() {
    let out = popdist(&["solve", "--k", "4", "--order", "6", "--mode", "counting"]);
    assert_eq!(stdout(&out), "1,1,2,6,16,42,112\n");

    let out = popdist(&["solve", "--k", "2", "--order", "3", "--mode", "full"]);
    assert_eq!(
        stdout(&out),
        "1 + u*v*s*t*x + q*u*v^2*s^2*t*x^2 + q^2*u*v^3*s^3*t*x^3\n"
    );

    // sequence cross-checked against brute-force class counts
    let out = popdist(&["solve", "--k", "5", "--order", "7", "--mode", "counting"]);
    assert_eq!(stdout(&out), "1,1,2,6,22,68,206,636\n");
}

#[test]
fn solve_json_metadata() {
    let out = popdist(&["solve", "--k", "3", "--order", "4", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["schema"], "popdist/1");
    assert_eq!(json["generator"], "thm4");
    assert_eq!(json["mode"], "full");
    assert_eq!(json["k"], 3);
    assert_eq!(json["terms"][0]["exps"].as_array().unwrap().len(), 7);
}

#[test]
fn closed_forms_output() {
    let out = popdist(&["closed", "--id", "F3_counting", "--order", "5", "--ones"]);
    assert_eq!(stdout(&out), "1,1,2,4,8,16\n");

    let out = popdist(&["closed", "--id", "S_tpq", "--order", "4", "--ones"]);
    assert_eq!(stdout(&out), "1,2,6,22\n");

    let out = popdist(&["closed", "--id", "Lmax_separable", "--order", "5", "--ones"]);
    assert_eq!(stdout(&out), "1,2,6,22,90\n");

    let out = popdist(&["closed", "--id", "F2", "--order", "2"]);
    assert_eq!(stdout(&out), "1 + u*v*s*t*x + q*u*v^2*s^2*t*x^2\n");

    let out = popdist(&["closed", "--id", "F4", "--format", "ratfun"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    let num_line = lines.next().unwrap();
    let den_line = lines.next().unwrap();
    assert!(num_line.starts_with("numerator: 1 "));
    assert!(den_line.starts_with("denominator: 1 "));
    // 100 and 19 monomials: count the separating signs after the first term
    let count_terms = |line: &str| line.matches(" + ").count() + line.matches(" - ").count() + 1;
    assert_eq!(count_terms(num_line.strip_prefix("numerator: ").unwrap()), 100);
    assert_eq!(count_terms(den_line.strip_prefix("denominator: ").unwrap()), 19);
}

#[test]
fn stats_and_dist() {
    let out = popdist(&["stats", "--perm", "34152", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["perm"], "34152");
    assert_eq!(json["asc"], 2);
    assert_eq!(json["lrmax"], 3);
    assert_eq!(json["rlmin"], 2);

    let out = popdist(&["stats", "--perm", "34152"]);
    assert_eq!(stdout(&out), "perm=34152 asc=2 des=2 lrmax=3 rlmax=2 lrmin=2 rlmin=2\n");

    let out = popdist(&["dist", "--n", "2", "--k", "3"]);
    let text = stdout(&out);
    assert!(text.starts_with("asc des lrmax rlmax lrmin rlmin count\n"));
    assert_eq!(text.lines().count(), 3);

    let out = popdist(&["dist", "--n", "3", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["generator"], "oracle");
    let total: u64 = json["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 6);
}

#[test]
fn schroder_output() {
    let out = popdist(&["schroder", "--n", "6", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["count"], "1806");
    let out = popdist(&["schroder", "--n", "9"]);
    assert_eq!(stdout(&out), "206098\n");
}

#[test]
fn verify_suite_runs_clean() {
    let out = popdist(&["verify", "--suite", "structure", "--max-n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().all(|line| line.starts_with("ok  ") || line.ends_with("0 failures")));
}

#[test]
fn exit_codes() {
    // usage errors: unknown flag, unknown suite, unknown id, bad permutation
    let out = popdist(&["enumerate", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = popdist(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = popdist(&["closed", "--id", "F9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = popdist(&["stats", "--perm", "11"]);
    assert_eq!(out.status.code(), Some(2));

    // limit violations
    let out = popdist(&["enumerate", "--n", "99"]);
    assert_eq!(out.status.code(), Some(3));
    let out = popdist(&["solve", "--k", "1", "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // diagnostics go to stderr, not stdout
    let out = popdist(&["enumerate", "--n", "99"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn env_var_overrides_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_popdist"))
        .args(["enumerate", "--n", "5"])
        .env("POPDIST_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["solve", "--k", "4", "--order", "7", "--format", "json"];
    let first = popdist(&args);
    let second = popdist(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}
