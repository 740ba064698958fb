//! Runs the `fihl` binary and compares its output with files in `tests/golden/`.
//! Set `FIHL_BLESS=1` to rewrite the golden files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fihl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fihl"))
        .args(args)
        .env_remove("FIHL_THREADS")
        .output()
        .expect("binary runs")
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("FIHL_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {}; rerun with FIHL_BLESS=1", path.display()));
    assert_eq!(actual, expected, "output differs from {name}");
}

fn ok(args: &[&str]) -> String {
    let out = fihl(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fihl-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn h0_json_and_csv() {
    let json = ok(&["h0", "--a", "2", "--b", "3"]);
    golden("h0_2_3.json", &json);
    assert!(json.contains("\"lambda\": \"1,1,1\"") && json.contains("\"mu\": \"1,1\""));
    golden("h0_2_3.csv", &ok(&["h0", "--a", "2", "--b", "3", "--format", "csv"]));
    golden("h0_3_4.json", &ok(&["h0", "--a", "3", "--b", "4"]));
}

#[test]
fn predicted_h0_equals_computed() {
    for (a, b) in [("2", "3"), ("3", "3"), ("3", "5")] {
        let computed = ok(&["h0", "--a", a, "--b", b]);
        let predicted = ok(&["h0", "--a", a, "--b", b, "--predicted"]);
        assert_eq!(computed, predicted, "a={a} b={b}");
    }
}

#[test]
fn modular_mode_gives_the_same_tables() {
    let exact = ok(&["homology", "--a", "3", "--b", "3"]);
    let modular = ok(&["--rank-mode", "modular", "homology", "--a", "3", "--b", "3"]);
    assert_eq!(exact, modular);
}

#[test]
fn check_h0_passes() {
    let out = ok(&["check-h0", "--max-b", "4"]);
    golden("check_h0_4.json", &out);
    assert!(!out.contains("\"fail\""));
}

#[test]
fn homology_outputs() {
    golden("homology_3_3.json", &ok(&["homology", "--a", "3", "--b", "3"]));
    golden("homology_3_3.csv", &ok(&["homology", "--a", "3", "--b", "3", "--format", "csv"]));
    golden("homology_3_3_n1.json", &ok(&["homology", "--a", "3", "--b", "3", "--n", "1"]));
}

#[test]
fn euler_output() {
    let out = ok(&["euler", "--a", "2", "--b", "3"]);
    golden("euler_2_3.json", &out);
    assert!(out.contains("\"holds\": true"));
}

#[test]
fn theta_outputs() {
    let out = ok(&["theta", "--lambda", "2,1", "--nu", "2", "--kappa", "1"]);
    golden("theta_21_2_1.json", &out);
    assert!(!out.contains("\"-") && !out.contains("\"0\""));
    let out = ok(&["theta", "--lambda", "5,2,1,1", "--nu", "3,1,1", "--kappa", "2,1,1", "--oracle"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["abs_err"].as_f64().unwrap() < 1e-8, "{out}");
}

#[test]
fn crit_outputs() {
    golden("crit_3_3.json", &ok(&["crit", "--a", "3", "--b", "3"]));
    golden("crit_3_3_gd.json", &ok(&["crit", "--a", "3", "--b", "3", "--gamma-delta"]));
}

#[test]
fn conjecture_sweep_resumes_identically() {
    let dir = scratch("sweep");
    let out = dir.join("report.json");
    let out_s = out.to_str().unwrap();
    let first = fihl(&["conjecture", "--max-a", "4", "--max-b", "4", "--out", out_s]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let report = fs::read_to_string(&out).unwrap();
    assert!(!report.contains("\"status\": \"VIOLATION\""), "a cell violates the lower bound");
    assert!(report.contains("\"VIOLATION\": 0"));
    golden("conjecture_4_4.json", &report);

    // Drop one checkpoint; the rerun recomputes only that cell.
    fs::remove_file(dir.join("report.json.cells/cell-3-4.json")).unwrap();
    let again = fihl(&["--threads", "2", "conjecture", "--max-a", "4", "--max-b", "4", "--out", out_s]);
    assert!(again.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), report);
    assert!(dir.join("report.json.cells/cell-3-4.json").exists());
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn timing_is_opt_in() {
    let dir = scratch("timing");
    let out = dir.join("r.json");
    let out_s = out.to_str().unwrap();
    assert!(fihl(&["conjecture", "--max-a", "1", "--max-b", "2", "--out", out_s]).status.success());
    assert!(!fs::read_to_string(&out).unwrap().contains("timing_ms"));
    assert!(fihl(&["conjecture", "--max-a", "1", "--max-b", "2", "--timing", "--out", out_s]).status.success());
    assert!(fs::read_to_string(&out).unwrap().contains("timing_ms"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = scratch("out");
    let out = dir.join("h0.json");
    let stdout = ok(&["h0", "--a", "2", "--b", "3", "--out", out.to_str().unwrap()]);
    assert!(stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap(), ok(&["h0", "--a", "2", "--b", "3"]));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn bad_input_exits_with_code_two() {
    let cases: &[&[&str]] = &[
        &["h0", "--a", "9", "--b", "3"],
        &["h0", "--a", "x", "--b", "3"],
        &["theta", "--lambda", "2,1", "--nu", "1", "--kappa", "1"],
        &["theta", "--lambda", "1,2", "--nu", "1", "--kappa", "0"],
        &["conjecture", "--max-a", "2", "--max-b", "2"],
        &["--threads", "0", "euler", "--a", "1", "--b", "1"],
        &["--rank-mode", "fast", "euler", "--a", "1", "--b", "1"],
        &["nonsense"],
    ];
    for args in cases {
        let out = fihl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}
