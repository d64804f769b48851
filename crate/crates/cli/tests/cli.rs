//! End-to-end behavior of the CLI: exit codes, file layout, manifest
//! contents and flag handling.

use std::path::Path;
use std::process::{Command, Output};

fn linksim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linksim"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    linksim()
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

fn read_csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.to_string()).collect())
        .collect()
}

#[test]
fn evaluate_writes_twelve_rows_and_a_manifest_naming_them() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(dir.path(), &["evaluate", "--runs", "3"]);
    assert!(output.status.success(), "{}", stderr(&output));

    let rows = read_csv_rows(&dir.path().join("results.csv"));
    assert_eq!(rows.len(), 12, "default enumeration is 4 technologies x 3 architectures");
    let runs_rows = read_csv_rows(&dir.path().join("runs.csv"));
    assert_eq!(runs_rows.len(), 12 * 3);

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    let outputs: Vec<String> = manifest["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    for name in &outputs {
        assert!(
            dir.path().join(name).exists(),
            "manifest references a missing file {name}"
        );
    }
    for name in ["results.csv", "runs.csv", "manifest.json"] {
        assert!(outputs.contains(&name.to_string()));
    }
    assert_eq!(manifest["combos"].as_array().unwrap().len(), 12);
    assert!(manifest["config_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(manifest["csv_schema_version"], 1);
    assert!(manifest["columns"]["results.csv"].is_array());
}

#[test]
fn include_mmwave_flag_extends_the_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(dir.path(), &["evaluate", "--runs", "2", "--include-mmwave"]);
    assert!(output.status.success(), "{}", stderr(&output));
    assert_eq!(read_csv_rows(&dir.path().join("results.csv")).len(), 15);
}

#[test]
fn explicit_combos_select_a_subset() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(
        dir.path(),
        &["evaluate", "--runs", "2", "--combos", "fso:relay,mmwave:flying-bs"],
    );
    assert!(output.status.success(), "{}", stderr(&output));
    let rows = read_csv_rows(&dir.path().join("results.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "fso");
    assert_eq!(rows[1][0], "mmwave");
}

#[test]
fn rank_writes_ascending_costs_over_all_combos() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(
        dir.path(),
        &["rank", "--runs", "3", "--weights", "0.5,0.3,0.2"],
    );
    assert!(output.status.success(), "{}", stderr(&output));
    let rows = read_csv_rows(&dir.path().join("rank.csv"));
    assert_eq!(rows.len(), 12);
    let costs: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    for pair in costs.windows(2) {
        assert!(pair[0] <= pair[1], "rank.csv must be ascending in cost");
    }
    for row in &rows {
        for s in &row[3..6] {
            let v: f64 = s.parse().unwrap();
            assert!((0.0..=1.0).contains(&v));
        }
    }
}

#[test]
fn sweep_users_writes_one_point_per_combo_and_count() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(
        dir.path(),
        &["sweep-users", "--runs", "2", "--counts", "2,4,8"],
    );
    assert!(output.status.success(), "{}", stderr(&output));
    let rows = read_csv_rows(&dir.path().join("sweep.csv"));
    assert_eq!(rows.len(), 12 * 3);
    // Counts appear in the requested order for each combo.
    assert_eq!(rows[0][2], "2");
    assert_eq!(rows[1][2], "4");
    assert_eq!(rows[2][2], "8");
}

#[test]
fn unknown_config_key_exits_1_with_a_path_qualified_message() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    std::fs::write(&config, r#"{"scenario": {"area_sid_m": 1000.0}}"#).unwrap();
    let output = linksim()
        .args(["evaluate", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let msg = stderr(&output);
    assert!(msg.contains("scenario"), "{msg}");
    assert!(msg.contains("area_sid_m"), "{msg}");
}

#[test]
fn invalid_geometry_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    std::fs::write(
        &config,
        r#"{"scenario": {"user_area_side_m": 2000.0, "area_side_m": 1000.0}}"#,
    )
    .unwrap();
    let output = linksim()
        .args(["evaluate", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("config error"));
}

#[test]
fn missing_config_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let output = linksim()
        .args(["evaluate", "--config", "/nonexistent/config.json"])
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn unwritable_out_dir_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // Occupy the output path with a plain file so create_dir_all fails.
    let blocked = dir.path().join("occupied");
    std::fs::write(&blocked, b"not a directory").unwrap();
    let output = linksim()
        .args(["evaluate", "--runs", "1"])
        .arg("--out-dir")
        .arg(&blocked)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr(&output).contains("i/o error"));
}

#[test]
fn out_dir_falls_back_to_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let output = linksim()
        .args(["evaluate", "--runs", "1"])
        .env("LINKSIM_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", stderr(&output));
    assert!(dir.path().join("results.csv").exists());
}

#[test]
fn missing_out_dir_is_a_usage_error() {
    let output = linksim()
        .args(["evaluate"])
        .env_remove("LINKSIM_OUT_DIR")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn seed_flag_changes_outputs_and_digest() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let a = run_in(dir_a.path(), &["evaluate", "--runs", "3", "--seed", "1"]);
    let b = run_in(dir_b.path(), &["evaluate", "--runs", "3", "--seed", "2"]);
    assert!(a.status.success() && b.status.success());
    let runs_a = std::fs::read(dir_a.path().join("runs.csv")).unwrap();
    let runs_b = std::fs::read(dir_b.path().join("runs.csv")).unwrap();
    assert_ne!(runs_a, runs_b);

    let digest = |p: &Path| -> String {
        let m: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(p.join("manifest.json")).unwrap())
                .unwrap();
        m["config_digest"].as_str().unwrap().to_string()
    };
    assert_ne!(digest(dir_a.path()), digest(dir_b.path()));
}

#[test]
fn sweep_counts_below_spot_count_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(dir.path(), &["sweep-users", "--runs", "1", "--counts", "1,4"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("user spots"));
}

#[test]
fn weights_flag_must_have_three_components() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_in(dir.path(), &["rank", "--runs", "1", "--weights", "0.5,0.5"]);
    assert_eq!(output.status.code(), Some(1));
}
