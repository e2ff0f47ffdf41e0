use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neumaier"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn check_strictly_neumaier_d16() {
    let out = run(&["check", "--group", &data("d16.json"), "--set", &data("d16-set.json")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("strictly Neumaier"));
    assert!(text.contains("(16,9,4;2,4)"));

    let out = run(&[
        "check",
        "--json",
        "--group",
        &data("d16.json"),
        "--set",
        &data("d16-set.json"),
    ]);
    let v = json(&out);
    assert_eq!(v["classification"]["class"], "strictly_neumaier");
    assert_eq!(v["classification"]["params"]["lambda"], 4);
    assert_eq!(v["quotient"], serde_json::json!([[3, 6], [2, 7]]));
    assert_eq!(v["pass"], true);
}

#[test]
fn check_reports_failure_with_exit_one() {
    let out = run(&[
        "check",
        "--group",
        &data("d16.json"),
        "--set",
        &data("d16-not-neumaier.json"),
    ]);
    assert_eq!(code(&out), 1);
    let g = temp(r#"{"kind": "cyclic", "n": 7}"#);
    let s = temp(r#"{"elements": ["a", "a^-1"]}"#);
    let out = run(&[
        "--json",
        "check",
        "--group",
        g.path().to_str().unwrap(),
        "--set",
        s.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["classification"]["class"], "edge_regular_no_regular_clique");
}

#[test]
fn check_strongly_regular_f21_and_s4() {
    let out = run(&[
        "--json",
        "check",
        "--group",
        &data("f21.json"),
        "--set",
        &data("f21-set.json"),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["classification"]["class"], "strongly_regular_neumaier");
    assert_eq!(v["classification"]["params"]["mu"], 4);
    assert_eq!(v["srg_eigenvalues"], serde_json::json!([3, -2]));
    let out = run(&["check", "--group", &data("s4.json"), "--set", &data("s4-set.json")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("(24,8,2;1,4)"));
}

#[test]
fn input_errors_exit_two() {
    let bad = temp("{not json");
    let unbound = temp(r#"{"elements": ["z"]}"#);
    let not_closed = temp(r#"{"elements": ["a"]}"#);
    for set in [bad.path(), unbound.path(), not_closed.path()] {
        let out = run(&["check", "--group", &data("z28.json"), "--set", set.to_str().unwrap()]);
        assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    assert_eq!(
        code(&run(&[
            "check",
            "--group",
            "/nonexistent.json",
            "--set",
            &data("z28-set.json")
        ])),
        2
    );
    assert_eq!(
        code(&run(&["search", "--group", &data("z35.json"), "--params", "35,10,3"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "search",
            "--group",
            &data("z28.json"),
            "--params",
            "35,10,3,1,5"
        ])),
        2
    );
    assert_eq!(code(&run(&["feasible", "--k", "1"])), 2);
    assert_eq!(code(&run(&["catalog", "verify", "no-such-entry"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn search_z35_is_proven_empty() {
    let out = run(&[
        "search",
        "--group",
        &data("z35.json"),
        "--params",
        "35,10,3,1,5",
        "--threads",
        "1",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("candidates examined: 6188"));
    let out = run(&[
        "--json",
        "search",
        "--group",
        &data("z35.json"),
        "--params",
        "35,10,3,1,5",
    ]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["result"]["stats"]["candidates"], 6188);
    assert_eq!(v["proves_nonexistence"], true);
}

#[test]
fn anchored_search_without_proof_exits_zero() {
    let out = run(&[
        "search",
        "--group",
        &data("z35.json"),
        "--params",
        "35,10,3,1,5",
        "--anchor-clique",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("not a proof"));
}

#[test]
fn search_z28_finds_catalog_set() {
    let out = run(&[
        "--json",
        "search",
        "--group",
        &data("z28.json"),
        "--params",
        "28,9,2,1,4",
        "--all",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let matches = v["result"]["matches"].as_array().unwrap();
    assert_eq!(matches.len(), 6);
    let wanted = serde_json::json!([1, 4, 5, 7, 14, 21, 23, 24, 27]);
    assert!(matches.iter().any(|m| m["set"] == wanted));
    let first = run(&[
        "--json",
        "search",
        "--group",
        &data("z28.json"),
        "--params",
        "28,9,2,1,4",
    ]);
    assert_eq!(json(&first)["result"]["matches"].as_array().unwrap().len(), 1);
}

#[test]
fn search_respects_cap() {
    let out = run(&[
        "search",
        "--group",
        &data("z35.json"),
        "--params",
        "35,10,3,1,5",
        "--cap",
        "100",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn algebra_identities() {
    let out = run(&[
        "--json",
        "algebra",
        "--group",
        &data("f21.json"),
        "--set",
        &data("f21-set.json"),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["clique_identity"]["match"], 2);
    assert_eq!(v["pds_identity"]["match"], serde_json::json!([5, 4]));
    assert_eq!(v["second_identity"]["as_written"], true);
    assert_eq!(v["complement_identities"]["square"], true);

    let out = run(&[
        "algebra",
        "--group",
        &data("s4.json"),
        "--set",
        &data("s4-set.json"),
        "--clique",
        "1, a*b*a, a*b^-1*a, a*b^2*a",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("clique identity: holds with a = 1"));

    let out = run(&[
        "--json",
        "algebra",
        "--group",
        &data("d16.json"),
        "--set",
        &data("d16-set.json"),
        "--clique",
        "1,a",
    ]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["clique_identity"]["mismatch"].is_object());

    let out = run(&[
        "algebra",
        "--group",
        &data("d16.json"),
        "--set",
        &data("d16-set.json"),
        "--clique",
        "1,a^4",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn feasible_table() {
    let out = run(&["feasible", "--k", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("(9,4,1;1,3) mu=2 feasible"));
    assert!(text.contains("(8,4,2;1,4) eliminated nexus_one,special_cases"));
    let out = run(&["--json", "feasible", "--k", "10", "--max-n", "16"]);
    let v = json(&out);
    let unresolved: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["status"] == "existence_unresolved")
        .map(|x| x["candidate"]["n"].as_i64().unwrap())
        .collect();
    assert_eq!(unresolved, [15, 14]);
}

#[test]
fn catalog_commands() {
    let out = run(&["catalog", "list"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 27);
    let out = run(&["--json", "catalog", "list"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 27);

    let out = run(&["catalog", "verify", "d16-smallest-strict"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS d16-smallest-strict"));

    let out = run(&["--json", "catalog", "verify-all"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["entries"], 27);
    assert_eq!(v["failures"], 0);
}

#[test]
fn quiet_suppresses_output_but_keeps_exit_codes() {
    let out = run(&[
        "--quiet",
        "search",
        "--group",
        &data("z35.json"),
        "--params",
        "35,10,3,1,5",
    ]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
    let out = run(&["catalog", "verify-all", "--quiet"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
}
