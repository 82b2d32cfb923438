//! End-to-end tests of the `lcomp` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn lcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn exported(scenario: &str) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = lcomp(&[
        "scenario",
        "export",
        scenario,
        "--dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    dir
}

fn file(dir: &Path, name: &str) -> String {
    let p: PathBuf = dir.join(format!("{name}.json"));
    p.to_str().unwrap().to_owned()
}

#[test]
fn check_and_eval() {
    let d = exported("parking");
    let park = file(d.path(), "park");
    let o = lcomp(&[
        "check",
        "--model",
        &park,
        "--state",
        "w1",
        "--formula",
        "O i c (do i d / p)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    let john = file(d.path(), "John");
    let o = lcomp(&[
        "check",
        "--model",
        &park,
        "--state",
        "w1",
        "--formula",
        "<act John a1> O i c (f / true)",
        "--actions",
        &john,
    ]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = lcomp(&["eval", "--model", &park, "--formula", "p"]);
    assert_eq!(stdout(&o).trim(), "{w1, w2}");
}

#[test]
fn update_then_iso() {
    let d = exported("parking");
    let (park, john, mary) = (
        file(d.path(), "park"),
        file(d.path(), "John"),
        file(d.path(), "Mary"),
    );
    let out = file(d.path(), "after");
    let o = lcomp(&[
        "update",
        "--model",
        &park,
        "--actions",
        &john,
        &mary,
        "--out",
        &out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = lcomp(&["iso", "--a", &out, "--b", &park]);
    let mapping: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(mapping["w1*a1*b1"], "w1");
    assert_eq!(mapping["w4*a2*b2"], "w4");

    let once = file(d.path(), "once");
    lcomp(&[
        "update",
        "--model",
        &park,
        "--actions",
        &john,
        "--out",
        &once,
    ]);
    let o = lcomp(&["iso", "--a", &once, "--b", &park]);
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn power_verdict_json() {
    let d = exported("parking");
    let o = lcomp(&[
        "power",
        "--model",
        &file(d.path(), "park"),
        "--state",
        "w1",
        "--actions",
        &file(d.path(), "John"),
        "--position",
        "O i c (f / true)",
        "--kind",
        "power",
        "--scope",
        "local",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["witnesses"], serde_json::json!(["a1"]));
    assert_eq!(v["currentTruth"], false);
}

#[test]
fn translate_prints_static_formula() {
    let d = exported("parking");
    let o = lcomp(&[
        "translate",
        "--formula",
        "[act John a1] f",
        "--actions",
        &file(d.path(), "John"),
    ]);
    assert_eq!(stdout(&o).trim(), "(!d & p) -> true");
}

#[test]
fn audit_exit_codes() {
    let o = lcomp(&["audit", "--axiom", "S4pref", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "none");
    let o = lcomp(&["audit", "--axiom", "univRed", "--variant", "paper"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_ne!(v["lhsValue"], v["rhsValue"]);
    let o = lcomp(&["audit", "--axiom", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scenarios_run() {
    for name in ["parking", "contract"] {
        let o = lcomp(&["scenario", "run", name]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn failing_scenario_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = lcomp(&["scenario", "export", "parking"]).stdout;
    let text =
        String::from_utf8(text)
            .unwrap()
            .replacen("\"expected\": true", "\"expected\": false", 1);
    let path = dir.path().join("broken.json");
    std::fs::write(&path, text).unwrap();
    let o = lcomp(&["scenario", "run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let d = exported("parking");
    let park = file(d.path(), "park");
    for args in [
        vec!["check", "--model", &park, "--state", "w9", "--formula", "p"],
        vec![
            "check",
            "--model",
            &park,
            "--state",
            "w1",
            "--formula",
            "p &",
        ],
        vec![
            "check",
            "--model",
            "/nonexistent.json",
            "--state",
            "w1",
            "--formula",
            "p",
        ],
        vec![
            "check",
            "--model",
            &park,
            "--state",
            "w1",
            "--formula",
            "[act Nobody a] p",
        ],
        vec!["scenario", "run", "nowhere"],
    ] {
        let o = lcomp(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
