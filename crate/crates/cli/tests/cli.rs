use std::path::Path;
use std::process::{Command, Output};

fn fishsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fishsim")).args(args).output().unwrap()
}

fn demo_config_path() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../harness/configs/demo.json").display().to_string()
}

#[test]
fn validate_shipped_demo() {
    let out = fishsim(&["validate", &demo_config_path()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok (1 species, 20 seeds, 100 days)"));
}

#[test]
fn missing_config_exits_2_naming_path() {
    let out = fishsim(&["run", "/no/such/experiment.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/experiment.json"));
}

#[test]
fn unknown_flag_prints_usage_and_exits_2() {
    let out = fishsim(&["demo", "--fast"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(demo_config_path()).unwrap().replace("\"days\": 100", "\"days\": 0");
    std::fs::write(&path, text).unwrap();
    let out = fishsim(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("days 0"));
}

#[test]
fn unwritable_output_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out =
        fishsim(&["demo", "--seed", "3", "--quiet", "--out-dir", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn run_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = fishsim(&[
        "run",
        &demo_config_path(),
        "--seed",
        "5",
        "--format",
        "csv",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut files: Vec<String> = std::fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    files.sort();
    assert_eq!(files, ["timeseries_seed_5.csv"]);
    let csv = std::fs::read_to_string(out_dir.join("timeseries_seed_5.csv")).unwrap();
    assert_eq!(csv.lines().count(), 101);
    assert!(String::from_utf8_lossy(&out.stdout).contains("1 seed(s)"));
}

#[test]
fn quiet_suppresses_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = fishsim(&["demo", "--seed", "2", "--quiet", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn serve_rejects_bad_presets_file() {
    let out = fishsim(&["serve", "--port", "0", "--presets", "/no/such/presets.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/presets.json"));
}
