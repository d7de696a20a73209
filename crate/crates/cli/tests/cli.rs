use std::process::{Command, Output};

fn lab(args: &[&str], seed: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_txtex-lab"));
    c.args(args).env_remove("TXTEX_SEED");
    if let Some(s) = seed {
        c.env("TXTEX_SEED", s);
    }
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

#[test]
fn lists_experiments_families_and_agents() {
    let o = lab(&["list", "experiments"], None);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().any(|l| l == "pow2-gap"));
    for what in ["families", "agents"] {
        let o = lab(&["list", what], None);
        assert_eq!(code(&o), 0);
        for line in String::from_utf8(o.stdout).unwrap().lines() {
            serde_json::from_str::<serde_json::Value>(line).expect("json per line");
        }
    }
}

#[test]
fn run_writes_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gap");
    let o = lab(&["run", "--experiment", "pow2-gap", "--out", out.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("results.csv")).unwrap();
    assert!(csv.starts_with("n,plain_distinct,oracle_queries,teacher_items\n"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["config_hash"].as_str().unwrap().len(), 64);
    assert!(out.join("config.json").exists());
}

#[test]
fn config_file_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 5, "range": [2, 4]}"#).unwrap();
    let out = dir.path().join("o");
    let args = ["run", "--experiment", "msd-linear", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    let o = lab(&args, Some("9"));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let echoed: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("config.json")).unwrap()).unwrap();
    assert_eq!(echoed["seed"], 9);
    assert_eq!(echoed["range"], serde_json::json!([2, 4]));
    let csv = std::fs::read_to_string(out.join("results.csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| ["2", "3", "4"].contains(&l.split(',').next().unwrap())));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(code(&lab(&["run", "--experiment", "nope", "--out", out], None)), 2);
    assert_eq!(code(&lab(&["verify", "--suite", "nope"], None)), 2);
    assert_eq!(code(&lab(&["list", "nope"], None)), 2);
    assert_eq!(code(&lab(&["run", "--experiment", "pow2-gap", "--out", out], Some("x"))), 2);
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"experiment": "msd-linear"}"#).unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(code(&lab(&["run", "--experiment", "pow2-gap", "--config", c, "--out", out], None)), 2);
    std::fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(code(&lab(&["run", "--experiment", "pow2-gap", "--config", c, "--out", out], None)), 2);
}

#[test]
fn tick_cap_flags_partial_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"max_ticks": 3}"#).unwrap();
    let out = dir.path().join("o");
    let args = ["run", "--experiment", "msd-linear", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    assert_eq!(code(&lab(&args, None)), 3);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["partial"], true);
}

#[test]
fn verify_codec_passes() {
    let o = lab(&["verify", "--suite", "codec"], None);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    assert!(text.contains("0 failed"));
}
