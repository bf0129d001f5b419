use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kft(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kft"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const C7: &str = "7 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n0 6\n";

fn k7() -> String {
    let mut s = String::from("7 21\n");
    for u in 0..7 {
        for v in u + 1..7 {
            s.push_str(&format!("{u} {v}\n"));
        }
    }
    s
}

#[test]
fn star_pipes_into_verify() {
    let built = kft(&["construct", "star", "--k", "1", "--p", "2", "--c", "3"], "");
    assert!(built.status.success());
    let graph = String::from_utf8(built.stdout).unwrap();
    let out = kft(&["verify", "--k", "1", "--p", "2", "--c", "3"], &graph);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["witness_count"], 7);
}

#[test]
fn verify_failure_has_same_fields() {
    let ok = report(&kft(&["verify", "--k", "1", "--p", "2", "--c", "2"], "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n"));
    let out = kft(&["verify", "--k", "1", "--p", "2", "--c", "3"], C7);
    assert_eq!(out.status.code(), Some(1));
    let bad = report(&out);
    assert_eq!(bad["holds"], false);
    assert_eq!(bad["counterexample"], serde_json::json!([0]));
    let keys = |v: &Value| v.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert_eq!(keys(&ok), keys(&bad));
}

#[test]
fn witnesses_are_reported() {
    let v = report(&kft(&["verify", "--k", "1", "--p", "1", "--c", "3", "--witnesses", "2"], "D~{\n"));
    assert_eq!(v["sample_witnesses"].as_array().unwrap().len(), 2);
}

#[test]
fn props_on_c7() {
    let out = kft(&["props"], C7);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["vertex_connectivity"], 2);
    assert_eq!(v["edge_connectivity"], 2);
    assert_eq!(v["block_count"], 1);
    assert_eq!(v["chordal"], false);
}

#[test]
fn recognize_k7() {
    let out = kft(&["recognize", "--p", "2", "--c", "3"], &k7());
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert!(v["explanation"].as_str().unwrap().contains("block of size 7 ≠ 4"));
}

#[test]
fn tree_template_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    std::fs::write(&path, "3 1 3\n0 1 3\n1 2 3\n").unwrap();
    let built = kft(&["construct", "tree", "--template", path.to_str().unwrap(), "--emit", "edge-list"], "");
    assert!(built.status.success(), "{}", String::from_utf8_lossy(&built.stderr));
    let text = String::from_utf8(built.stdout).unwrap();
    assert!(text.starts_with("10 18\n"));
    let out = kft(&["recognize", "--p", "3", "--c", "3"], &text);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn audit_and_separator() {
    let star = String::from_utf8(kft(&["construct", "star", "--k", "1", "--p", "2", "--c", "3"], "").stdout).unwrap();
    let out = kft(&["audit", "--k", "1", "--p", "2", "--c", "3"], &star);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["passed"], true);
    let out = kft(&["audit", "--k", "1", "--p", "2", "--c", "3", "--separator", "0"], &star);
    assert_eq!(out.status.code(), Some(0));
    let out = kft(&["audit", "--k", "1", "--p", "2", "--c", "3", "--separator", "1"], &star);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_min_and_budget() {
    let out = kft(&["search-min", "--k", "1", "--p", "2", "--c", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["minimum_found"], 12);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["exemplars"].as_array().unwrap().len(), 1);

    let out = kft(&["search-min", "--k", "1", "--p", "2", "--c", "3", "--budget-graphs", "5"], "");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["exhaustive"], false);
}

#[test]
fn jobs_do_not_change_output() {
    let run = |jobs: &str| {
        let mut v = report(&kft(&["search-min", "--k", "2", "--p", "1", "--c", "3", "--jobs", jobs], ""));
        v.as_object_mut().unwrap().remove("elapsed_seconds");
        v
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn probe_small() {
    let out = kft(&["probe", "--k", "2", "--p", "1", "--c", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["outcome"], "supported");
    let out = kft(&["probe", "--k", "1", "--p", "2", "--c", "3"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_2() {
    let out = kft(&["props"], "3 1\n0 0\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));
    assert_eq!(kft(&["verify", "--k", "1"], "").status.code(), Some(2));
}

#[test]
fn contract_and_candidate() {
    let star = String::from_utf8(kft(&["construct", "star", "--k", "1", "--p", "3", "--c", "3"], "").stdout).unwrap();
    let out = kft(&["contract", "--k", "1", "--p", "3", "--c", "3", "--vertex", "1"], &star);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["proven"], true);
    let contracted = v["graph"].as_str().unwrap().to_string();
    let out = kft(&["verify", "--k", "1", "--p", "2", "--c", "3"], &contracted);
    assert_eq!(out.status.code(), Some(0));
    let out = kft(&["candidate", "--k", "1", "--p", "3", "--c", "3"], &star);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["proven"], true);
}

#[test]
fn c2_families() {
    let cyc = String::from_utf8(kft(&["construct", "cycle", "--p", "3"], "").stdout).unwrap();
    assert_eq!(kft(&["verify", "--k", "1", "--p", "3", "--c", "2"], &cyc).status.code(), Some(0));
    let k6 = String::from_utf8(kft(&["construct", "c2", "--k", "4", "--p", "1"], "").stdout).unwrap();
    assert_eq!(kft(&["verify", "--k", "4", "--p", "1", "--c", "2"], &k6).status.code(), Some(0));
    let h = String::from_utf8(kft(&["construct", "harary", "--m", "3", "--n", "8", "--emit", "edge-list"], "").stdout).unwrap();
    assert!(h.starts_with("8 12\n"));
}
