//! End-to-end runs of the `quartic-sweep` binary.

use std::path::Path;
use std::process::{Command, Output};

use quartic_light::perturbative::closed::ClosedFormInputs;
use quartic_light::sweep::{evaluate_point, ReferenceSource, Witness};

fn sweep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic-sweep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(csv_text: &[u8]) -> Vec<csv::StringRecord> {
    let mut reader = csv::Reader::from_reader(csv_text);
    reader.records().map(|r| r.unwrap()).collect()
}

fn column(records: &[csv::StringRecord], idx: usize) -> Vec<f64> {
    records.iter().map(|r| r[idx].parse().unwrap()).collect()
}

#[test]
fn csv_values_round_trip_bit_exactly() {
    let out = sweep(&[
        "--alpha",
        "0.7",
        "--theta",
        "pi/3",
        "--lambda",
        "1e-3",
        "--t-steps",
        "17",
    ]);
    assert!(out.status.success());
    for rec in records(&out.stdout) {
        let (alpha, theta, lambda, t): (f64, f64, f64, f64) = (
            rec[0].parse().unwrap(),
            rec[1].parse().unwrap(),
            rec[2].parse().unwrap(),
            rec[3].parse().unwrap(),
        );
        let witness: Witness = rec[4].parse().unwrap();
        let inputs = ClosedFormInputs::new(alpha, theta, lambda, t).unwrap();
        let (cf, _) = evaluate_point(witness, &inputs, ReferenceSource::Published, None).unwrap();
        let written: f64 = rec[5].parse().unwrap();
        assert_eq!(written.to_bits(), cf.unwrap().to_bits(), "{rec:?}");
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.conf");
    std::fs::write(
        &config,
        "# base settings\nalpha = 2\nt-steps = 5\nwitness = d1\nwitness = d2\n",
    )
    .unwrap();
    let out = sweep(&["--config", config.to_str().unwrap(), "--alpha", "1.5"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let recs = records(&out.stdout);
    assert_eq!(recs.len(), 10);
    assert!(column(&recs, 0).iter().all(|&a| a == 1.5));
    assert!(recs.iter().all(|r| &r[4] == "d1" || &r[4] == "d2"));
}

#[test]
fn writes_to_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = sweep(&[
        "--t-steps",
        "3",
        "--witness",
        "f",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(records(&std::fs::read(&path).unwrap()).len(), 3);
    assert!(!out.stderr.is_empty(), "summary goes to stderr");
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    assert_eq!(sweep(&["--t-steps", "1"]).status.code(), Some(2));
    assert_eq!(sweep(&["--lambda", "-1"]).status.code(), Some(2));
    assert_eq!(sweep(&["--witness", "nope"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(
        sweep(&["--config", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let undersized = sweep(&["--alpha", "3", "--dim", "15", "--mode", "exact"]);
    assert_eq!(undersized.status.code(), Some(3));

    let missing = Path::new("/nonexistent-dir/rows.csv");
    assert_eq!(
        sweep(&["--t-steps", "3", "--out", missing.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn real_axis_sweep_shows_squeezing_and_alternating_bunching() {
    let out = sweep(&[
        "--alpha",
        "1",
        "--theta",
        "pi/2",
        "--lambda",
        "1e-2",
        "--t-steps",
        "200",
        "--witness",
        "f",
        "--witness",
        "d2",
    ]);
    assert!(out.status.success());
    let recs = records(&out.stdout);
    let (f, d2): (Vec<_>, Vec<_>) = recs.iter().partition(|r| &r[4] == "f");
    assert!(f.iter().all(|r| r[5].parse::<f64>().unwrap() <= 0.0));
    let d2 = column(&d2.into_iter().cloned().collect::<Vec<_>>(), 5);
    assert!(d2.iter().any(|&v| v < -1e-6) && d2.iter().any(|&v| v > 1e-6));
}

#[test]
fn free_evolution_rows_are_boundary() {
    let out = sweep(&["--lambda", "0", "--t-steps", "9", "--mode", "compare"]);
    assert!(out.status.success());
    let recs = records(&out.stdout);
    for rec in recs.iter().filter(|r| &r[4] != "N") {
        assert_eq!(&rec[8], "boundary", "{rec:?}");
    }
}
