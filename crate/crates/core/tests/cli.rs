use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_d4verify"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (
        out.status.code().unwrap_or(-1),
        json,
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn value<'a>(report: &'a Value, name_prefix: &str) -> &'a str {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().starts_with(name_prefix))
        .unwrap_or_else(|| panic!("no check {name_prefix}"))["value"]
        .as_str()
        .unwrap()
}

#[test]
fn shell_sizes() {
    let (code, r, _) = run(&["shell", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "shell");
    assert_eq!(value(&r, "shell size"), "24");
    let (_, r, _) = run(&["shell", "--m", "3"]);
    assert_eq!(value(&r, "shell size"), "96");
}

#[test]
fn shell_zero_is_usage_error() {
    let (code, _, err) = run(&["shell", "--m", "0"]);
    assert_ne!(code, 0);
    assert!(err.contains("--m"));
}

#[test]
fn shell_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m3.txt");
    let (code, _, _) = run(&["shell", "--m", "3", "--export", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 96);
    assert_eq!(text.lines().next(), Some("-2 -1 -1 0"));
    let pts = d4verify::lattice::read_points(text.as_bytes()).unwrap();
    assert_eq!(pts, d4verify::lattice::enumerate_shell(3).unwrap().points());
}

#[test]
fn design_strength() {
    let (code, r, _) = run(&["design", "--m", "1", "--max-degree", "12"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "strength"), "{2,4,10}");
    assert_eq!(value(&r, "P6 sum"), "-192");
    let (_, r, _) = run(&["design", "--m", "2", "--max-degree", "12"]);
    assert_eq!(value(&r, "strength"), "{2,4,10}");
    let (_, r, _) = run(&["design", "--m", "1", "--max-degree", "2"]);
    assert_eq!(value(&r, "strength"), "{2}");
}

#[test]
fn design_degree_cap() {
    let (code, _, err) = run(&["design", "--m", "1", "--max-degree", "40"]);
    assert_ne!(code, 0);
    assert!(err.contains("D4V_MAX_DEGREE"), "{err}");
}

#[test]
fn lp_certify() {
    let (code, r, _) = run(&["lp-certify"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "F_T(1)"), "9/256");
    assert_eq!(value(&r, "F_T bound"), "12");
    assert_eq!(value(&r, "F_C bound (a1 = 7/3)"), "12");
    let (code, r, _) = run(&["lp-certify", "--a1", "5/2"]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["a1"], "5/2");
    let (code, _, err) = run(&["lp-certify", "--a1", "-1/3"]);
    assert_ne!(code, 0);
    assert!(err.contains("a1"));
}

#[test]
fn decompose() {
    for (m, n) in [("1", "1"), ("3", "4"), ("25", "31")] {
        let (code, r, _) = run(&["decompose", "--m", m]);
        assert_eq!(code, 0);
        assert_eq!(value(&r, "orbit count"), n);
    }
}

#[test]
fn molien() {
    let (code, r, _) = run(&["molien", "--group", "n", "--max-degree", "12"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "dims"), "1,0,0,0,0,0,7,0,9,0,0,0,26");
    let (code, r, _) = run(&["molien", "--group", "trivial", "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "dims"), "1,4,9");
    let (code, _, _) = run(&["molien", "--group", "e8"]);
    assert_ne!(code, 0);
}

#[test]
fn qseries_tau2_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tau2.csv");
    let (code, r, _) = run(&[
        "qseries",
        "tau2",
        "--bound",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "tau2(1..5)"), "1,-8,12,64,-210");
    let csv = std::fs::read_to_string(path).unwrap();
    assert_eq!(csv, "m,tau2\n1,1\n2,-8\n3,12\n4,64\n5,-210\n");
}

#[test]
fn qseries_theta_and_scan() {
    let (code, r, _) = run(&["qseries", "theta", "--bound", "100"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(value(&r, "theta_P6"), "order 100");
    let (code, r, _) = run(&["qseries", "scan", "--bound", "3000"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "tau2(m) != 0"), "none");
}

#[test]
fn series_cap_enforced_before_work() {
    let out = Command::new(env!("CARGO_BIN_EXE_d4verify"))
        .args(["qseries", "tau2", "--bound", "1000"])
        .env("D4V_SERIES_CAP", "100")
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("D4V_SERIES_CAP"));
}

#[test]
fn deterministic_output() {
    let strip = |mut v: Value| {
        v["elapsed_ms"] = Value::Null;
        v.to_string()
    };
    let (_, a, _) = run(&["decompose", "--m", "15"]);
    let (_, b, _) = run(&["decompose", "--m", "15", "--threads", "1"]);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn verify_all_quick() {
    let (code, r, _) = run(&["verify-all", "--profile", "quick"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for n in 1..=10 {
        let tag = format!("[{n}]");
        assert!(
            names.iter().any(|s| s.starts_with(&tag)),
            "criterion {n} missing"
        );
    }
    let (code, _, _) = run(&["verify-all", "--profile", "slow"]);
    assert_ne!(code, 0);
}

#[test]
fn table_mode() {
    let out = Command::new(env!("CARGO_BIN_EXE_d4verify"))
        .args(["--table", "shell", "--m", "2"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("shell\n"));
    assert!(text.contains("PASS"));
}
