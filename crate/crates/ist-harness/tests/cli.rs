use std::path::Path;
use std::process::Command;

fn istlab(args: &[&str]) -> std::process::ExitStatus {
    Command::new(env!("CARGO_BIN_EXE_istlab")).args(args).output().expect("binary runs").status
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn passing_run_exits_zero_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ops");
    assert!(istlab(&["ops-selftest", "--out", out.to_str().unwrap()]).success());
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(report.starts_with("experiment = operator-suite\n"));
    assert!(report.ends_with("pass = true\n"));
    assert!(out.join("f2.istf").exists() && out.join("timing.txt").exists());
}

#[test]
fn failing_threshold_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // A coarse round trip misses the 1e-4 budget.
    let cfg = write_config(dir.path(), r#"{"experiment": "nls-roundtrip", "n": 64, "half_width": 4}"#);
    let out = dir.path().join("o");
    let status = istlab(&["nls-invert", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(status.code(), Some(1));
    assert!(std::fs::read_to_string(out.join("report.txt")).unwrap().ends_with("pass = false\n"));
}

#[test]
fn invalid_configs_exit_two_with_an_error_record() {
    let dir = tempfile::tempdir().unwrap();
    for (i, text) in [
        r#"{"experiment": "nls-evolve-compare", "dt": -0.001}"#,
        r#"{"experiment": "nls-evolve-compare", "step": 0.001}"#,
        r#"{"experiment": "dsii-involution"}"#,
    ]
    .iter()
    .enumerate()
    {
        let cfg = write_config(dir.path(), text);
        let out = dir.path().join(format!("e{i}"));
        let status = istlab(&["nls-evolve", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(status.code(), Some(2), "{text}");
        let record = std::fs::read_to_string(out.join("error.txt")).unwrap();
        assert!(record.contains("status = error"));
        assert!(!out.join("report.txt").exists());
    }
}

#[test]
fn reports_are_byte_identical_across_runs_and_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"experiment": "dsii-involution", "n": 32, "half_width": 5, "block": 16}"#);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    // The reduced grid may miss a threshold; only completion matters here.
    for (out, workers) in [(&a, "1"), (&b, "3")] {
        let status = istlab(&["dsii-scatter", "--config", &cfg, "--out", out.to_str().unwrap(), "--workers", workers]);
        assert!(matches!(status.code(), Some(0 | 1)));
    }
    for name in ["report.txt", "q.istf", "s.istf", "q_back.istf", "cgo_log.csv", "cgo_log_inverse.csv"] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn shipped_configs_resolve() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        ist_harness::RunConfig::load(&path).unwrap().resolve().unwrap();
        count += 1;
    }
    assert!(count >= 10);
}
