//! End-to-end tests of the binary: exit codes, output determinism, the
//! documented JSON shapes, and file output.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_classnum"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let (stdout, _, code) = run(args);
    assert_eq!(code, 0, "expected success for {args:?}");
    serde_json::from_str(&stdout).expect("valid JSON")
}

#[test]
fn check_reports_the_full_pipeline() {
    let v = json(&["check", "--p", "5", "--q", "3", "--n", "3"]);
    assert_eq!(v["case"]["d"], -29);
    assert_eq!(v["case"]["D"], -116);
    assert_eq!(v["conditions"]["verdict"], "PASS");
    assert_eq!(v["verification"]["h"], 6);
    assert_eq!(v["verification"]["order_p"], 3);
    assert_eq!(v["verification"]["divisible"], true);
}

#[test]
fn check_rejects_size_violation_with_exit_2() {
    let (stdout, stderr, code) = run(&["check", "--p", "11", "--q", "37", "--n", "3"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("size violation"), "stderr: {stderr}");
    assert_eq!(stderr.lines().count(), 1, "one-line diagnostic");
}

#[test]
fn usage_errors_exit_2() {
    let (_, _, code) = run(&["check", "--p", "5", "--q", "3"]); // missing --n
    assert_eq!(code, 2);
    let (_, _, code) = run(&["check", "--p", "5", "--q", "3", "--n", "3", "--bogus"]);
    assert_eq!(code, 2, "unknown flags are errors");
    let (_, _, code) = run(&["no-such-verb"]);
    assert_eq!(code, 2);
}

#[test]
fn identical_argv_gives_identical_bytes() {
    for args in [
        vec!["table", "--n", "3", "--pmax", "7", "--range", "paper"],
        vec!["check", "--p", "17", "--q", "7", "--n", "3"],
        vec!["bs", "--lambda2", "1", "--d1", "29", "--d2", "9", "--p", "5", "--ymax", "20"],
        vec!["scan-t2", "--q", "5", "--n", "5", "--pmax", "60"],
    ] {
        let (first, _, _) = run(&args);
        let (second, _, _) = run(&args);
        assert_eq!(first, second, "non-deterministic output for {args:?}");
        assert!(!first.is_empty());
    }
}

#[test]
fn table_json_and_out_file() {
    let dir = std::env::temp_dir().join(format!("classnum-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t1.csv");
    let (stdout, _, code) = run(&[
        "table", "--n", "3", "--pmax", "5", "--range", "paper",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "data goes to the file, not stdout");
    let written = std::fs::read_to_string(&path).unwrap();
    let (direct, _, _) = run(&["table", "--n", "3", "--pmax", "5", "--range", "paper"]);
    assert_eq!(written, direct, "file and stdout bytes agree");
    assert!(written.starts_with("p,q,n,v,m,d,h,marker,order_p,verdict\n"));
    assert!(!written.contains(' '), "no stray whitespace in CSV");
    std::fs::remove_dir_all(&dir).unwrap();

    let v = json(&["table", "--n", "3", "--pmax", "5", "--range", "paper", "--format", "json"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn order_verb_matches_prediction() {
    let v = json(&["order", "--p", "5", "--q", "3", "--n", "3"]);
    assert_eq!(v["order"], 3);
    assert_eq!(v["form"]["a"], 5);
    assert_eq!(v["D"], -116);
}

#[test]
fn prop2_reports_roots_and_none() {
    let v = json(&["prop2", "--p", "5", "--q", "3", "--n", "3"]);
    assert_eq!(v["results"][0]["ell"], 3);
    assert!(v["results"][0]["root"].is_null());

    let v = json(&["prop2", "--p", "17", "--q", "7", "--n", "3", "--ell", "3"]);
    let root = &v["results"][0]["root"];
    assert_eq!(root["a"], -7);
    assert_eq!(root["b"], 1);
    assert_eq!(root["halved"], true);
}

#[test]
fn prop1_sweep_shape() {
    let v = json(&[
        "prop1", "--dmin", "-100", "--dmax", "-3", "--abmax", "5", "--ells", "3,5",
    ]);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["ell"], 3);
    assert_eq!(results[0]["members"], results[0]["total"]);
    assert_eq!(results[1]["ell"], 5);
    assert_eq!(results[1]["members"], 0);
}

#[test]
fn bs_verb_reports_solutions_and_memberships() {
    let v = json(&["bs", "--lambda2", "1", "--d1", "2", "--d2", "1", "--p", "3", "--ymax", "20"]);
    assert_eq!(v["verdict"], "OK");
    assert_eq!(v["memberships"]["e"], true);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 3);
    assert_eq!(sols[2]["x"], "11");
    assert_eq!(sols[2]["y"], 5);

    let (_, stderr, code) = run(&["bs", "--lambda2", "1", "--d1", "2", "--d2", "4", "--p", "3", "--ymax", "10"]);
    assert_eq!(code, 2, "non-coprime D1, D2 is a usage error");
    assert!(stderr.contains("coprime"));
}

#[test]
fn bs_sweep_clean_range_exits_zero() {
    let v = json(&["bs-sweep", "--d1max", "1", "--d2max", "1", "--pmax", "3", "--ymax", "20"]);
    assert_eq!(v["unexplained"], 0);
}

#[test]
fn bs_sweep_reports_uncovered_instance_with_exit_1() {
    // 6x^2 + 1 = 7^y has two solutions outside every published family;
    // the sweep must surface it and signal via exit code 1.
    let (stdout, stderr, code) = run(&[
        "bs-sweep", "--d1max", "6", "--d2max", "1", "--pmax", "7", "--ymax", "10",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("theorem-contradicting"));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["unexplained"], 1);
    let multi = v["multi_solution"].as_array().unwrap();
    let bad = multi
        .iter()
        .find(|m| m["verdict"] == "VIOLATION")
        .expect("the uncovered instance is listed");
    assert_eq!(bad["instance"]["d1"], 6);
    assert_eq!(bad["instance"]["p"], 7);
}

#[test]
fn scan_t2_shape() {
    let v = json(&["scan-t2", "--q", "41", "--n", "5", "--pmax", "5"]);
    assert_eq!(v["failing"][0]["p"], 5);
    assert_eq!(v["failing"][0]["d"], -1);
    assert_eq!(v["skipped"][0], 3);
}

#[test]
fn theorem4_below_exception_bound() {
    let v = json(&["theorem4", "--pnmax", "200"]);
    assert_eq!(v["exceptions"].as_array().unwrap().len(), 0);
    // (3,3): v = -26, d = -26, h = 6; (5,3): v = -124, d = -31, h = 3.
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.iter().any(|c| c["p"] == 3 && c["n"] == 3 && c["h"] == 6));
    assert!(cases.iter().any(|c| c["p"] == 5 && c["n"] == 3 && c["h"] == 3));
}

#[test]
fn theorem4_flags_the_unique_exception_with_exit_zero() {
    // The lone non-divisible pair is expected, so it is reported as an
    // exception, not as a violation.
    let v = json(&["theorem4", "--pnmax", "300"]);
    let exceptions = v["exceptions"].as_array().unwrap();
    assert_eq!(exceptions.len(), 1);
    assert_eq!(exceptions[0]["p"], 3);
    assert_eq!(exceptions[0]["n"], 5);
}

#[test]
fn human_format_is_available_everywhere() {
    for args in [
        vec!["check", "--p", "5", "--q", "3", "--n", "3", "--format", "human"],
        vec!["order", "--p", "5", "--q", "3", "--n", "3", "--format", "human"],
        vec!["cohn", "--kmax", "10", "--format", "human"],
        vec!["ljunggren", "--xmax", "10", "--nmax", "5", "--format", "human"],
        vec!["theorem4", "--pnmax", "200", "--format", "human"],
        vec!["scan-t2", "--q", "3", "--n", "5", "--pmax", "20", "--format", "human"],
        vec!["prop1", "--dmin", "-50", "--dmax", "-3", "--abmax", "3", "--format", "human"],
    ] {
        let (stdout, _, code) = run(&args);
        assert_eq!(code, 0, "failed: {args:?}");
        assert!(!stdout.is_empty());
        assert!(serde_json::from_str::<serde_json::Value>(&stdout).is_err(), "human, not JSON");
    }
}
