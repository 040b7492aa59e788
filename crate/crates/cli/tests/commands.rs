use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overcubic"))
        .args(args)
        .env_remove("OVERCUBIC_TABLE_CACHE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

fn first(v: &Value, key: &str) -> String {
    v["findings"][0][key].as_str().unwrap().to_owned()
}

#[test]
fn values() {
    let (v, code) = json(&["value", "100", "--method", "both"]);
    assert_eq!(code, 0);
    for f in v["findings"].as_array().unwrap() {
        assert_eq!(f["value"], "13080871050922");
    }
    assert_eq!(first(&json(&["value", "9"]).0, "value"), "470");
    assert_eq!(first(&json(&["value", "0"]).0, "value"), "1");
    assert_eq!(
        first(&json(&["value", "30", "--method", "rademacher"]).0, "value"),
        first(&json(&["value", "30"]).0, "value")
    );
}

#[test]
fn scans() {
    let (v, code) = json(&["scan", "turan", "--d", "3", "--horizon", "2000"]);
    assert_eq!(code, 0);
    assert_eq!(first(&v, "candidate_n"), "39");

    let (v, _) = json(&["scan", "logconcavity", "--from", "10", "--to", "2000"]);
    assert!(v["findings"].as_array().unwrap().is_empty());
    assert_eq!(v["verified_range"], serde_json::json!(["10", "2000"]));

    let (v, _) = json(&["scan", "subadd", "--max-sum", "200"]);
    let pairs: Vec<(String, String, String)> = v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["n"].as_str().unwrap().into(), f["m"].as_str().unwrap().into(), f["relation"].as_str().unwrap().into()))
        .collect();
    assert!(pairs.contains(&("1".into(), "1".into(), "violation".into())));
    assert!(pairs.contains(&("1".into(), "2".into(), "equality".into())));

    let (v, code) = json(&["scan", "ratio", "--from", "2363", "--to", "2366"]);
    assert_eq!(code, 0);
    assert_eq!(v["findings"].as_array().unwrap().len(), 4);
}

#[test]
fn bounds_bm_and_transformations() {
    let (v, code) = json(&["bm", "4"]);
    assert_eq!(code, 0);
    assert!(first(&v, "value").starts_with("6.011"));

    let (v, code) = json(&["bounds", "--bessel", "25"]);
    assert_eq!(code, 0);
    assert_eq!(first(&v, "holds"), "yes");

    let (v, code) = json(&["--precision", "60", "transformcheck", "f", "1", "3", "1.0"]);
    assert_eq!(code, 0);
    let residual: f64 = first(&v, "residual_upper").parse().unwrap();
    assert!(residual < 1e-25, "{residual}");
}

#[test]
fn failing_checks_exit_one() {
    // The n^-6 window does not hold at 393.
    assert_eq!(json(&["bounds", "--window", "393"]).1, 1);
    // The published a(100) main term is off by about 0.05.
    assert_eq!(json(&["verify-table"]).1, 1);
    let (v, code) = json(&["verify-table", "--only", "tally"]);
    assert_eq!(code, 1);
    assert_eq!(first(&v, "term"), "k=1");
    assert_eq!(first(&v, "within_tolerance"), "no");
    let (v, code) = json(&["verify-table", "--only", "rows"]);
    assert_eq!(code, 0);
    assert_eq!(v["findings"].as_array().unwrap().len(), 4);
    // B_3 is 369.3838, not 369.385.
    assert_eq!(json(&["bm", "3", "--expect", "369.385"]).1, 1);
    assert_eq!(json(&["bm", "4", "--expect", "6.011"]).1, 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--precision", "10", "value", "3"][..],
        &["value"],
        &["transformcheck", "g", "1", "3", "1.0"],
        &["transformcheck", "f", "2", "4", "1.0"],
        &["bounds"],
        &["bm", "4", "--expect", "six"],
        &["table", "check"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "ratio", "--from", "2400", "--to", "2450", "--threads", "3"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let serial = run(&["scan", "ratio", "--from", "2400", "--to", "2450", "--threads", "1"]).stdout;
    assert_eq!(a, serial);
}

#[test]
fn csv_and_text_formats() {
    let out = String::from_utf8(run(&["--format", "csv", "scan", "turan", "--d", "2", "--d", "3"]).stdout).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "candidate_n,d,failures,last_failure");
    assert_eq!(lines.len(), 3);
    assert!(lines[2].starts_with("39,3,"));

    let out = String::from_utf8(run(&["--format", "text", "value", "5"]).stdout).unwrap();
    assert!(out.contains("value="));
    assert!(out.trim_end().ends_with("ok: yes"));
}

#[test]
fn table_commands_use_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t");
    let p = path.to_str().unwrap();
    assert_eq!(json(&["--cache", p, "table", "build", "120"]).1, 0);
    let (v, code) = json(&["--cache", p, "table", "check"]);
    assert_eq!(code, 0);
    assert_eq!(first(&v, "mismatches"), "");

    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\n9,470", "\n9,471", 1)).unwrap();
    assert_eq!(run(&["--cache", p, "table", "check"]).status.code(), Some(1));
}
