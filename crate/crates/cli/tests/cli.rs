use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn vclosed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vclosed")).args(args).arg("--no-timing").output().expect("runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn verdict<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["verdicts"].as_array().unwrap().iter().find(|v| v["name"] == name).unwrap_or_else(|| panic!("no verdict {name}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vclosed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn retract_criterion_reports_false_with_exit_zero() {
    let out = vclosed(&["retract-criterion", "--group", "Z2+Z4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["runtime_ms"], 0);
    assert_eq!(verdict(&r, "criterion")["value"], false);
    let out = vclosed(&["retract-criterion", "--group", "Z4+Z4+Z3"]);
    assert_eq!(verdict(&report(&out), "criterion")["value"], true);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(vclosed(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(vclosed(&["decompose"]).status.code(), Some(64));
    assert_eq!(vclosed(&["decompose", "--group", "Y7"]).status.code(), Some(64));
    assert_eq!(vclosed(&["heis", "classify", "--n", "1", "--q", "3", "--word", "x1^"]).status.code(), Some(64));
}

#[test]
fn witness_build_then_verify() {
    let bundle = scratch("q8-k2.json");
    let path = bundle.to_str().unwrap();
    let out = vclosed(&["witness", "build", "--group", "q8", "--k", "2", "--out", path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let built: Value = serde_json::from_str(&std::fs::read_to_string(&bundle).unwrap()).unwrap();
    assert_eq!(verdict(&built, "g_order")["value"], 128);

    let out = vclosed(&["witness", "verify-vc", "--bundle", path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(verdict(&report(&out), "verbally_closed")["value"], true);

    let out = vclosed(&["witness", "verify-retract", "--bundle", path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(verdict(&report(&out), "retraction_absent")["value"], true);

    // the certificate inside the bundle verifies on its own
    let out = vclosed(&["approx-verify", "--cert", path]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_certificate_exits_one() {
    let out = vclosed(&["approx-search", "--p", "2", "--k", "2"]);
    let mut r = report(&out);
    let cert = &mut r["details"]["certificate"];
    // make the basis contain the all-ones word, a full-support codeword
    cert["basis"] = serde_json::json!([[1, 1, 1], [0, 1, 1]]);
    let path = scratch("bad-cert.json");
    std::fs::write(&path, serde_json::to_string(cert).unwrap()).unwrap();
    let out = vclosed(&["approx-verify", "--cert", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(verdict(&report(&out), "property1")["status"], "differs");
}

#[test]
fn tiny_budget_is_indeterminate() {
    let bundle = scratch("q8-budget.json");
    let path = bundle.to_str().unwrap();
    vclosed(&["witness", "build", "--group", "q8", "--k", "2", "--out", path]);
    let out = vclosed(&["witness", "verify-retract", "--bundle", path, "--budget", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(verdict(&report(&out), "retraction_absent")["status"], "indeterminate");
}

#[test]
fn heis_commands() {
    let out = vclosed(&["heis", "classify", "--n", "1", "--q", "3", "--word", "[x1,x2]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(verdict(&r, "class")["value"], "commutator_subgroup");
    assert_eq!(verdict(&r, "agrees_with_exhaustive")["value"], true);

    let out = vclosed(&["heis", "quotient", "--alpha", "6", "--nparam", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(verdict(&r, "gcd")["value"], 2);
    assert_eq!(verdict(&r, "abelian")["value"], false);

    let out = vclosed(&["heis", "prop6", "--n", "1", "--q", "2", "--max-len", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn center_and_embedding() {
    let out = vclosed(&["violation-embedding", "--group", "Z2+Z4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["details"]["ambient"], "Z4+Z4");
    let r = report(&vclosed(&["center", "--group", "d4"]));
    assert_eq!(verdict(&r, "center_direct_factor")["value"], false);
}
