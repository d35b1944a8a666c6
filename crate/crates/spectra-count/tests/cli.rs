mod common;

use std::path::Path;
use std::process::Output;

use spectra_count::matrix_market::format_real_diagonal;
use spectra_count::DensityHistogram;

use common::{cli, rng, rotated_diagonal, to_matrix_market, write_file};

fn run(args: &[&str], matrix: &Path, out: &Path) -> Output {
    cli().arg("--matrix").arg(matrix).arg("--out").arg(out).args(args).output().unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let out = cli().arg(flag).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{flag}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn bad_arguments_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "m.mtx", &format_real_diagonal(&[0.5]));
    let out = dir.path().join("o.json");
    let cases: [&[&str]; 5] = [
        &["--interval", "0,1", "--mode", "exact-eig"],
        &["--interval", "0;1", "--bins", "2", "--mode", "exact-eig"],
        &["--interval", "1,0", "--bins", "2", "--mode", "exact-eig"],
        &["--interval", "0,1", "--bins", "2", "--mode", "guess"],
        &["--interval", "0,1", "--bins", "2", "--mode", "quantum-sim", "--estimator", "mu"],
    ];
    for args in cases {
        let o = run(args, &m, &out);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert!(!out.exists());
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--interval", "0,1", "--bins", "2", "--mode", "exact-eig"];
    let out = dir.path().join("o.json");

    let o = run(&args, &dir.path().join("missing.mtx"), &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("file not found"));

    let bad = write_file(dir.path(), "bad.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 oops\n");
    assert_eq!(run(&args, &bad, &out).status.code(), Some(1));

    let m = write_file(dir.path(), "m.mtx", &format_real_diagonal(&[0.5]));
    assert_eq!(run(&args, &m, &dir.path().join("no/such/dir.json")).status.code(), Some(1));
}

#[test]
fn csv_output_and_negative_interval() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "m.mtx", &format_real_diagonal(&[-0.75, -0.2, 0.1, 0.6]));
    let out = dir.path().join("o.csv");
    let o = run(&["--interval", "-1,1", "--bins", "2", "--mode", "exact-eig", "--format", "csv"], &m, &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "edge_lo,edge_hi,count,stderr\n-1,0,2,0\n0,1,2,0\n");
}

#[test]
fn dense_complex_matrix_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let a = rotated_diagonal(&[0.1, 0.2, 0.35, 0.8, 1.5, -0.5], &mut rng(11));
    let m = write_file(dir.path(), "a.mtx", &to_matrix_market(&a));
    let out = dir.path().join("o.json");
    let o = run(&["--interval", "0,1", "--bins", "2", "--mode", "exact-eig"], &m, &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let h = DensityHistogram::read_json(&out).unwrap();
    assert_eq!(h.counts, vec![3.0, 1.0]);
    assert_eq!(h.meta.dim, 6);
    assert_eq!(h.meta.mode, "exact-eig");
}

#[test]
fn timing_and_circuit_export() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "m.mtx", &format_real_diagonal(&[0.25, 0.75]));
    let out = dir.path().join("o.json");
    let circuit = dir.path().join("c.json");
    let o = cli()
        .arg("--matrix")
        .arg(&m)
        .arg("--out")
        .arg(&out)
        .args(["--interval", "0,1", "--bins", "2", "--mode", "classical-stochastic", "--probes", "8"])
        .args(["--quad-qubits", "4", "--timing", "--circuit-out"])
        .arg(&circuit)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let h = DensityHistogram::read_json(&out).unwrap();
    assert!(h.meta.wall_time_s.is_some());
    assert_eq!(h.meta.quad_points, 16);
    let gates = spectra_count::circuit::circuit_from_json(&std::fs::read_to_string(&circuit).unwrap()).unwrap();
    assert_eq!(gates.len(), 15);
}

#[test]
fn identical_requests_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_file(dir.path(), "m.mtx", &format_real_diagonal(&[0.1, 0.4, 0.45, 0.8]));
    let args = ["--interval", "0,1", "--bins", "3", "--mode", "classical-stochastic", "--probes", "20", "--seed", "5"];
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert!(run(&args, &m, &a).status.success());
    assert!(run(&args, &m, &b).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
