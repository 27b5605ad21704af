use std::process::{Command, Output};

fn fsk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsk")).args(args).output().expect("run fsk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = fsk(&all);
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn check_reports_certificates() {
    let v = json(&["check", "cleary"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "check");
    assert_eq!(v["presentation"]["name"], "cleary");
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(verdicts.iter().all(|c| c["confidence"] != "refuted"));
    assert!(verdicts.iter().any(|c| c["property"] == "ore" && c["confidence"] == "proved"));
}

#[test]
fn expect_flag_exits_on_refutation() {
    assert_eq!(fsk(&["check", "free2", "--ore"]).status.code(), Some(0));
    assert_eq!(fsk(&["--expect", "check", "free2", "--ore"]).status.code(), Some(3));
    assert_eq!(fsk(&["--expect", "check", "cleary"]).status.code(), Some(0));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(fsk(&["check", "no-such-example"]).status.code(), Some(2));
    assert_eq!(fsk(&["eval", "cleary", "a1 (("]).status.code(), Some(2));
}

#[test]
fn spine_output() {
    let o = fsk(&["spine", "cleary"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("F-infinity"));
    let o = fsk(&["spine", "rebel"]);
    assert!(stdout(&o).contains("F-infinity: no certificate"));
}

#[test]
fn finite_presentation_and_abelianization() {
    let o = fsk(&["present", "cleary", "--finite", "--abelian"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Z^2 + Z/2"));
}

#[test]
fn eval_equality() {
    let o = fsk(&["eval", "cleary", "a1 a1", "eq", "b1 b2"]);
    assert!(stdout(&o).contains("yes"), "{}", stdout(&o));
}

#[test]
fn qspace_compare() {
    let o = fsk(&["qspace", "free1", "compare", "a(a(I,I),I):2", "a(I,I):2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("LT"), "{}", stdout(&o));
}

#[test]
fn examples_list_and_emit() {
    let o = fsk(&["examples", "list"]);
    assert!(stdout(&o).contains("cleary"));
    let o = fsk(&["examples", "emit", "cleary"]);
    assert!(stdout(&o).contains("a1 a1 = b1 b2"));
}
