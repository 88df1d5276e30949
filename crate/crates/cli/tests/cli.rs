//! End-to-end checks of the command-line surface: CSV shape, determinism,
//! manifests, and exit statuses.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinring"))
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn ground_csv_shape_and_contract() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ground.csv");
    let status = bin()
        .args([
            "ground", "--l", "8", "--j-min", "-1", "--j-max", "1", "--steps", "201", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = read(&out);
    let mut lines = text.lines();
    let run_line = lines.next().unwrap();
    assert!(run_line.starts_with("# run "));
    assert_eq!(lines.next().unwrap(), "J,E0,G1,G2,C1,C2,crossing_flag");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 201);

    // rows ascend in J, and the J=0 row has C2 = 0
    let mut last_j = f64::NEG_INFINITY;
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 7);
        let j: f64 = fields[0].parse().unwrap();
        assert!(j > last_j);
        last_j = j;
        if j.abs() < 1e-12 {
            let c2: f64 = fields[5].parse().unwrap();
            assert_eq!(c2, 0.0);
        }
    }

    // manifest sits alongside and shares the run id
    let manifest = read(&dir.path().join("ground.manifest"));
    let id = run_line.strip_prefix("# run ").unwrap();
    assert!(manifest.contains(&format!("run_id = {id}")));
    assert!(manifest.contains("rows = 201"));
}

#[test]
fn reruns_are_byte_identical_regardless_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for (out, workers) in [(&out1, "1"), (&out2, "3")] {
        let status = bin()
            .args([
                "ground", "--workers", workers, "--l", "6", "--j-min", "-0.4", "--j-max", "0.6",
                "--steps", "11", "--out",
            ])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());
}

#[test]
fn thermal_csv_long_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("thermal.csv");
    let status = bin()
        .args([
            "thermal", "--l", "6", "--j-grid", "-1:1:5", "--t-grid", "0.5:2:4", "--distance",
            "2", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = read(&out);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 4 * 5);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 3);
        let c: f64 = fields[2].parse().unwrap();
        assert!((0.0..=1.0).contains(&c));
        // the 6-ring never entangles next-nearest pairs
        assert!(c <= 1e-12, "L=6 distance-2 concurrence {c} > 0");
    }
}

#[test]
fn threshold_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("th.csv");
    let status = bin()
        .args([
            "threshold", "--l-list", "4,5", "--j-grid", "-0.5:0:2", "--distance", "1", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = read(&out);
    let mut lines = text.lines().skip(1);
    assert_eq!(lines.next().unwrap(), "L,J,T_th");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    // even ring keeps entanglement hotter than the odd one at J = -0.5
    let t4: f64 = rows[0].split(',').nth(2).unwrap().parse().unwrap();
    let t5: f64 = rows[2].split(',').nth(2).unwrap().parse().unwrap();
    assert!(t4 > t5, "T_th(4) = {t4} should exceed T_th(5) = {t5}");
}

#[test]
fn threshold_l6_next_nearest_column_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("th6.csv");
    let status = bin()
        .args([
            "threshold", "--l-list", "6", "--j-grid", "-1:1:5", "--distance", "2", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for row in read(&out).lines().skip(2) {
        let t: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(t, 0.0, "row {row}");
    }
}

#[test]
fn usage_errors_exit_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");

    // malformed grid spec
    let status = bin()
        .args(["thermal", "--l", "6", "--j-grid", "nope", "--t-grid", "0.5:2:4", "--distance", "2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    assert!(!out.exists());

    // invalid scan range
    let status = bin()
        .args(["ground", "--l", "6", "--j-min", "1", "--j-max", "-1", "--steps", "5", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    assert!(!out.exists());

    // unknown flag (clap)
    let status = bin().args(["ground", "--bogus"]).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // validate cap
    let status = bin().args(["validate", "--max-l", "11"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn resource_and_io_errors_exit_3() {
    // unwritable output path
    let status = bin()
        .args([
            "ground", "--l", "6", "--j-min", "0", "--j-max", "1", "--steps", "2", "--out",
            "/nonexistent-dir/x.csv",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    // thermal grid beyond the size cap
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("big.csv");
    let status = bin()
        .args([
            "thermal", "--l", "16", "--j-grid", "0:1:2", "--t-grid", "1:2:2", "--distance", "1",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn validate_passes_at_small_size() {
    let output = bin().args(["validate", "--max-l", "4"]).output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("checks passed"));
    assert!(!text.contains("FAIL "));
}
