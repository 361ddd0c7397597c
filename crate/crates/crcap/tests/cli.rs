//! End-to-end tests of the `crcap` binary: exit codes, CSV and manifest
//! emission, and reproducibility across runs and worker counts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn crcap(args: &[&str], threads: &str, dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crcap"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

/// Pinned deployment constants keep these tests independent of the
/// auto-calibration pass.
fn write_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("config.json");
    fs::write(
        &path,
        r#"{
  "sigma_db": 8.0,
  "gamma": 3.5,
  "a_p": 2.5e12,
  "a_c": 7.9e8,
  "seed": 7
}"#,
    )
    .unwrap();
    path
}

#[test]
fn help_lists_subcommands_and_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = crcap(&["--help"], "2", dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["calibrate", "lowint", "alpha", "rate", "rerun"] {
        assert!(text.contains(sub), "help missing {sub}");
    }
    assert!(text.contains("sweep_axis,sweep_value"), "CSV docs missing");
}

#[test]
fn malformed_config_names_field_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"sigma_bd": 8.0}"#).unwrap();
    let out = crcap(
        &["lowint", "--config", bad.to_str().unwrap()],
        "2",
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sigma_bd"), "error must name the field: {err}");
    assert!(
        err.contains("\"exit_code\":2"),
        "machine-readable record: {err}"
    );
}

#[test]
fn calibrate_too_few_draws_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = crcap(
        &[
            "calibrate",
            "--config",
            config.to_str().unwrap(),
            "--drops",
            "100",
        ],
        "2",
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("insufficient_samples"), "{err}");
}

#[test]
fn calibrate_respects_edge_rule_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = crcap(
            &["calibrate", "--drops", "150000", "--seed", "3"],
            "2",
            dir.path(),
        );
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "same seed must reproduce the constants");
    let row = first.lines().nth(1).unwrap();
    let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
    let ratio = cells[1] / cells[0];
    let want = (100.0f64 / 1000.0).powf(3.5);
    assert!((ratio - want).abs() < 1e-12 * want, "a_c/a_p = {ratio}");
}

#[test]
fn lowint_symmetric_point_and_trend() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = crcap(
        &[
            "lowint",
            "--config",
            config.to_str().unwrap(),
            "--sweep",
            "rc_over_rp",
            "--values",
            "1.0",
        ],
        "2",
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let p: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!((p - 0.5).abs() < 1e-3, "symmetric point {p}");

    let out = crcap(
        &[
            "lowint",
            "--config",
            config.to_str().unwrap(),
            "--sweep",
            "sigma",
            "--values",
            "4,8,12",
        ],
        "2",
        dir.path(),
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let ps: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert!(ps[0] > ps[1] && ps[1] > ps[2], "sigma trend {ps:?}");
}

#[test]
fn csv_has_single_header_and_stable_fields() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out_path = dir.path().join("rate.csv");
    let out = crcap(
        &[
            "rate",
            "--config",
            config.to_str().unwrap(),
            "--mode",
            "beta-sweep",
            "--values",
            "1,2",
            "--drops",
            "20000",
            "--out",
            out_path.to_str().unwrap(),
        ],
        "2",
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "beta,mean_rate,std_error,n_effective");
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 4);
    }
    assert!(
        dir.path().join("rate.csv.manifest.json").exists(),
        "manifest must accompany the CSV"
    );
}

#[test]
fn scenario_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = crcap(
        &[
            "lowint",
            "--config",
            config.to_str().unwrap(),
            "--scenario",
            "ricric",
            "--k-db",
            "5",
            "--sweep",
            "gamma",
            "--values",
            "3.5",
        ],
        "2",
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains(",ricric,"));
}

#[test]
fn manifest_rerun_is_byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out_path = dir.path().join("first.csv");
    let out = crcap(
        &[
            "lowint",
            "--config",
            config.to_str().unwrap(),
            "--sweep",
            "sigma",
            "--values",
            "6,8",
            "--with-mc",
            "--drops",
            "30000",
            "--out",
            out_path.to_str().unwrap(),
        ],
        "2",
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let first = fs::read(&out_path).unwrap();

    // re-execute from the manifest on a single worker
    let rerun_path = dir.path().join("rerun.csv");
    let manifest = dir.path().join("first.csv.manifest.json");
    let out = crcap(
        &[
            "rerun",
            "--manifest",
            manifest.to_str().unwrap(),
            "--out",
            rerun_path.to_str().unwrap(),
        ],
        "1",
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let second = fs::read(&rerun_path).unwrap();
    assert_eq!(first, second, "rerun must reproduce the CSV byte for byte");
}
