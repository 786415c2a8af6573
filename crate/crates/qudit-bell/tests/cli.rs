//! End-to-end tests of the `qudit-bell` binary: flag handling, output
//! formats, exit codes, and the verification mode.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qudit-bell"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success for {args:?}; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn json_reports(args: &[&str]) -> serde_json::Value {
    let out = run_ok(args);
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn headline_run_produces_the_expected_numbers() {
    let v = json_reports(&[
        "--parties", "3", "--dim", "4", "--classical", "both", "--quantum", "eigen",
        "--format", "json",
    ]);
    let r = &v[0];
    assert_eq!(r["scenario"]["parties"], 3);
    assert_eq!(r["classical"]["closed"].as_f64().unwrap(), 2.0);
    assert_eq!(r["classical"]["brute"]["value"].as_f64().unwrap(), 2.0);
    assert_eq!(r["classical"]["brute"]["exhaustive"], true);
    assert_eq!(r["classical"]["match"], true);
    assert!((r["quantum"]["expectation"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((r["quantum"]["max_eigenvalue"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((r["qcr"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    assert_eq!(r["violated"], true);
}

#[test]
fn chsh_equivalent_variant_run() {
    let v = json_reports(&[
        "--parties", "2", "--dim", "2", "--variant", "1/4", "--format", "json",
    ]);
    let r = &v[0];
    assert_eq!(r["scenario"]["nu"], "1/4");
    assert!((r["classical"]["closed"].as_f64().unwrap() - 0.70711).abs() < 1e-5);
    assert!((r["quantum"]["expectation"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((r["qcr"].as_f64().unwrap() - 1.41421).abs() < 1e-5);
    assert_eq!(r["violated"], true);
}

#[test]
fn odd_dimension_run_reports_no_violation() {
    let v = json_reports(&["--parties", "3", "--dim", "3", "--format", "json"]);
    let r = &v[0];
    assert_eq!(r["classical"]["closed"].as_f64().unwrap(), 2.0);
    assert_eq!(r["quantum"]["expectation"].as_f64().unwrap(), 2.0);
    assert_eq!(r["qcr"].as_f64().unwrap(), 1.0);
    assert_eq!(r["violated"], false);
}

#[test]
fn sweep_over_ranges_sorts_scenarios() {
    let v = json_reports(&[
        "--parties", "2..3", "--dim", "2,3", "--classical", "closed", "--quantum", "bound",
        "--format", "json",
    ]);
    let keys: Vec<(u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["scenario"]["parties"].as_u64().unwrap(),
                r["scenario"]["dim"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(keys, vec![(2, 2), (2, 3), (3, 2), (3, 3)]);
}

#[test]
fn decimal_variant_is_rejected_with_exit_2() {
    let out = bin()
        .args(["--parties", "2", "--dim", "2", "--variant", "0.25"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("0.25"), "stderr: {stderr}");
}

#[test]
fn unknown_flags_exit_2() {
    let out = bin().arg("--no-such-flag").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_cap_exits_3_and_names_the_cap() {
    let out = bin()
        .args([
            "--parties", "3", "--dim", "4", "--classical", "brute", "--max-strategies", "100",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("100"), "stderr: {stderr}");
    assert!(
        stderr.contains("closed") || stderr.contains("sample"),
        "should suggest alternatives; stderr: {stderr}"
    );
}

#[test]
fn verify_passes_on_a_small_grid() {
    let out = run_ok(&["--verify", "--parties", "2,3", "--dim", "2,3"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS raising-identity"));
    assert!(stdout.contains("0 failed"), "stdout: {stdout}");
}

#[test]
fn corrupted_half_step_makes_verify_exit_4() {
    let out = bin()
        .args(["--verify", "--parties", "3", "--dim", "2"])
        .env("QUDIT_BELL_CORRUPT_OMEGA", "0.001")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL raising-identity"), "stdout: {stdout}");
}

#[test]
fn identical_configs_render_identical_bytes_across_thread_counts() {
    let args = [
        "--parties", "3", "--dim", "2,3,4", "--variant", "0", "--variant", "1/4",
        "--format", "json",
    ];
    let run_with = |threads: &str| {
        let out = run_ok(&[&args[..], &["--threads", threads]].concat());
        out.stdout
    };
    let one = run_with("1");
    assert_eq!(one, run_with("2"));
    assert_eq!(one, run_with("8"));
}

#[test]
fn thread_count_can_come_from_the_environment() {
    let out = bin()
        .args(["--parties", "3", "--dim", "2", "--format", "csv"])
        .env("QUDIT_BELL_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());

    let bad = bin()
        .args(["--parties", "3", "--dim", "2"])
        .env("QUDIT_BELL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn csv_format_and_out_file() {
    let out = run_ok(&["--parties", "3", "--dim", "4", "--format", "csv"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with(
        "parties,dim,nu,classical_closed,classical_brute,exhaustive,\
         quantum_expectation,quantum_max_eig,qcr,violated"
    ));

    let path = std::env::temp_dir().join(format!("qudit-bell-cli-test-{}.csv", std::process::id()));
    let _ = std::fs::remove_file(&path);
    run_ok(&[
        "--parties", "3", "--dim", "4", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn sampled_mode_is_reproducible_and_marked_non_exhaustive() {
    let args = [
        "--parties", "3", "--dim", "4", "--classical", "sample", "--samples", "2000",
        "--seed", "11", "--format", "json",
    ];
    let a = run_ok(&args).stdout;
    let b = run_ok(&args).stdout;
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v[0]["classical"]["brute"]["exhaustive"], false);
    assert!(v[0]["classical"]["brute"]["value"].as_f64().unwrap() <= 2.0 + 1e-9);
    assert_eq!(v[0]["provenance"]["classical_used"], "brute-sampled");
}

#[test]
fn timings_flag_adds_timing_fields() {
    let v = json_reports(&[
        "--parties", "3", "--dim", "2", "--format", "json", "--timings",
    ]);
    assert!(v[0]["timing_ms"]["total"].as_f64().unwrap() >= 0.0);
    let without = json_reports(&["--parties", "3", "--dim", "2", "--format", "json"]);
    assert!(without[0].get("timing_ms").is_none());
}
