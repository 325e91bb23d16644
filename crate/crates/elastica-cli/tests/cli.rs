//! End-to-end checks of the binary: exit codes, output determinism,
//! file shapes, and the machine-readable summaries.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elastica"))
        .args(args)
        .env_remove("ELASTICA_THREADS")
        .output()
        .unwrap()
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elastica"))
        .args(args)
        .env("ELASTICA_THREADS", threads)
        .output()
        .unwrap()
}

fn stdout_str(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_str(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Data rows of a CSV payload: everything after the column-name row.
fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["sweep", "--m-min", "-3.0", "--m-max", "0.8", "--points", "9"]);
    let b = run(&["sweep", "--m-min", "-3.0", "--m-max", "0.8", "--points", "9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());

    let a = run(&["solve", "--p", "2", "--q", "3"]);
    let b = run(&["solve", "--p", "2", "--q", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_count_does_not_change_the_bytes() {
    let args = ["sweep", "--m-min", "-4.0", "--m-max", "0.7", "--points", "25"];
    let one = run_with_threads(&args, "1");
    let four = run_with_threads(&args, "4");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["solve", "--m", "0"][..],
        &["solve", "--m", "0.5", "--samples", "8"],
        &["solve", "--m", "0.5", "--tol-root", "0"],
        &["solve", "--m", "0.5", "--k0", "-1"],
        &["solve", "--m", "0.5", "--p", "2", "--q", "3"],
        &["solve", "--p", "2"],
        &["pair", "--target-f", "10"],
        &["pair", "--target-f", "1.0"],
        &["sweep", "--m", "0.9"],
        &["sweep", "--m-min", "0.5", "--m-max", "0.1"],
        &["sweep", "--points", "0"],
        &["sweep", "--format", "obj"],
        &["verify", "--m", "0"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "args {args:?}: {}", stderr_str(&out));
    }
    let out = run_with_threads(&["constants"], "abc");
    assert_eq!(code(&out), 2);
}

#[test]
fn closure_failures_exit_3() {
    let off_branch = run(&["solve", "--m", "0.5", "--q0", "0.9"]);
    assert_eq!(code(&off_branch), 3, "{}", stderr_str(&off_branch));
    assert!(stderr_str(&off_branch).contains("closure"));

    let aperiodic = run(&["solve", "--p", "3", "--q", "4"]);
    assert_eq!(code(&aperiodic), 3, "{}", stderr_str(&aperiodic));
    assert!(stderr_str(&aperiodic).contains("not an integer"));
}

#[test]
fn failed_equivalence_gate_exits_4() {
    let out = run(&["verify", "--m", "0.5", "--tol-equiv", "1e-17"]);
    assert_eq!(code(&out), 4, "{}", stderr_str(&out));
    assert!(stdout_str(&out).contains("FAIL"));

    let pass = run(&["verify", "--m", "0.5"]);
    assert_eq!(code(&pass), 0, "{}", stderr_str(&pass));
    assert!(stdout_str(&pass).contains("overall          pass"));
}

#[test]
fn trefoil_file_shape_and_closure() {
    let out = run(&["solve", "--p", "2", "--q", "3", "--samples", "64"]);
    assert_eq!(code(&out), 0, "{}", stderr_str(&out));
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 64 * 3 + 1);
    let first = &rows[0];
    let last = rows.last().unwrap();
    // Columns 6..9 hold x, y, z.
    let gap = ((first[6] - last[6]).powi(2)
        + (first[7] - last[7]).powi(2)
        + (first[5] - last[5]).powi(2))
    .sqrt();
    assert!(gap < 1e-5, "closure gap {gap}");
    let summary = stderr_str(&out);
    assert!(summary.contains("delta_theta"));
    assert!(summary.contains("ell         = 3"));
}

#[test]
fn open_export_reports_the_vertical_drift() {
    let out = run(&["solve", "--m", "0.5", "--no-closure", "--samples", "32"]);
    assert_eq!(code(&out), 0, "{}", stderr_str(&out));
    let err = stderr_str(&out);
    assert!(err.contains("delta_z per period"));
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 33);
    assert_eq!(rows[0].len(), 5);
    // z advances by the reported drift over the period.
    let drift = rows.last().unwrap()[4] - rows[0][4];
    assert!(drift.abs() > 0.1, "drift {drift}");
    assert!(stdout_str(&out).contains("delta_z_per_period"));

    // An explicit on-closure q0 brings the drift back to zero.
    let closed = run(&[
        "solve",
        "--m",
        "0.5",
        "--no-closure",
        "--q0",
        "0.9569465810444635",
        "--samples",
        "32",
    ]);
    assert_eq!(code(&closed), 0);
    let rows = csv_rows(&stdout_str(&closed));
    let drift = rows.last().unwrap()[4] - rows[0][4];
    assert!(drift.abs() < 1e-9, "drift {drift}");
}

#[test]
fn pair_json_summary_and_files() {
    let dir = std::env::temp_dir().join("elastica-cli-pair-test");
    std::fs::create_dir_all(&dir).unwrap();
    let base = dir.join("pair.csv");
    let out = run(&[
        "pair",
        "--target-f",
        "2.0",
        "--json",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr_str(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
    assert_eq!(doc["near_degenerate"], serde_json::Value::Bool(false));
    let m_minus = doc["minus"]["m"].as_f64().unwrap();
    let m_plus = doc["plus"]["m"].as_f64().unwrap();
    assert!((m_minus - 0.751).abs() < 1e-2, "m- = {m_minus}");
    assert!((m_plus + 3.02).abs() < 5e-2, "m+ = {m_plus}");
    assert!(doc["max_gap"].as_f64().unwrap() < 1e-8);
    for name in ["f_hat", "avg_torsion", "total_torsion", "r_hat", "delta_theta"] {
        assert!(doc["gaps"][name].as_f64().unwrap() < 1e-8, "{name}");
    }

    for member in ["minus", "plus"] {
        let path = dir.join(format!("pair.{member}.csv"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(csv_rows(&text).len(), 256 + 1);
        std::fs::remove_file(path).unwrap();
    }
}

#[test]
fn near_degenerate_pair_warns_instead_of_failing() {
    let out = run(&["pair", "--target-f", "3.1415926"]);
    assert_eq!(code(&out), 0, "{}", stderr_str(&out));
    assert!(stderr_str(&out).contains("near-degenerate"));
    assert!(stdout_str(&out).contains("m- ="));
}

#[test]
fn sweep_hits_the_fixed_rows_and_stays_nan_free() {
    let at_zero = run(&["sweep", "--m", "0"]);
    assert_eq!(code(&at_zero), 0);
    let text = stdout_str(&at_zero);
    assert!(!text.to_lowercase().contains("nan"), "{text}");
    let row = &csv_rows(&text)[0];
    // Columns: m,Q0,nu,lambda,p,omega1,abs_omega3,F_hat,avg_torsion,
    // total_torsion,R_hat,mu2,Omega,delta_theta.
    assert_eq!(row[13], 0.0, "delta_theta at m=0");
    assert_eq!(row[9], 0.0, "total_torsion at m=0");
    assert_eq!(row[8], 0.0, "avg_torsion at m=0");
    assert!((row[7] - std::f64::consts::PI).abs() < 1e-12);

    let at_boundary = run(&["sweep", "--m", "0.82611476598497036"]);
    let row = &csv_rows(&stdout_str(&at_boundary))[0];
    assert!((row[9] - 0.5).abs() < 1e-6, "total_torsion at m0-");
    assert!((row[13] + std::f64::consts::PI).abs() < 1e-6, "delta_theta at m0-");

    let grid = run(&["sweep", "--points", "21"]);
    assert_eq!(code(&grid), 0);
    let text = stdout_str(&grid);
    assert!(!text.to_lowercase().contains("nan"), "{text}");
    assert_eq!(csv_rows(&text).len(), 21);
}

#[test]
fn obj_export_is_a_polyline() {
    let out = run(&["solve", "--p", "2", "--q", "3", "--samples", "32", "--format", "obj"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let vertices = text.lines().filter(|l| l.starts_with("v ")).count();
    assert_eq!(vertices, 32 * 3 + 1);
    let polylines: Vec<&str> = text.lines().filter(|l| l.starts_with("l ")).collect();
    assert_eq!(polylines.len(), 1);
    assert_eq!(polylines[0].split_whitespace().count(), 1 + vertices);
}

#[test]
fn constants_json_reports_the_branch_values() {
    let out = run(&["constants", "--json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let get = |name: &str| doc[name]["value"].as_f64().unwrap();
    assert!((get("m0_minus") - 0.82611).abs() < 1e-4);
    // The published m0+ digits round m0- before applying the involution,
    // which amplifies truncation by 1/(1-m0-)^2 = 33; compare in the
    // stable coordinate and widen the raw window accordingly.
    let m0_plus = get("m0_plus");
    assert!((-m0_plus / (1.0 - m0_plus) - 0.82611).abs() < 1e-4);
    assert!((m0_plus + 4.75076).abs() < 33.07e-4);
    assert!((get("m_star") - 0.6455).abs() < 1e-3);
    assert!((get("nu_star") - 0.1632).abs() < 1e-3);
    assert!(!doc["m0_minus"]["provenance"].as_str().unwrap().is_empty());
}

#[test]
fn json_curve_document_carries_metadata() {
    let out = run(&["solve", "--m", "0.5", "--samples", "32", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["parameters"]["m"].as_f64().unwrap(), 0.5);
    assert_eq!(doc["samples"].as_array().unwrap().len(), 33);
    assert_eq!(doc["columns"].as_array().unwrap().len(), 18);
    assert!(doc["functionals"]["f_hat"].as_f64().unwrap() > 0.0);
}
