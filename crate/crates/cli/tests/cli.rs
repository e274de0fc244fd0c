//! End-to-end tests of the `chargesweep` binary: documented examples,
//! output schemas, and the exit-code contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chargesweep"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("spawn chargesweep")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chargesweep-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}\n{}",
        String::from_utf8_lossy(&out.stderr),
        String::from_utf8_lossy(&out.stdout)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn kernel_prints_half_for_the_symmetric_interval() {
    let dir = temp_dir("kernel");
    let out = run(&["kernel", "--z", "1,0", "--y1", "-1", "--y2", "1", "--genus", "0"], &dir);
    assert_eq!(stdout_of(&out).trim(), "0.5");
    // The quadrature method agrees to printing precision.
    let out = run(
        &["kernel", "--z", "1,0", "--y1", "-1", "--y2", "1", "--genus", "0", "--method", "quadrature"],
        &dir,
    );
    let v: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((v - 0.5).abs() < 1e-10);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn balayage_conserves_mass_on_a_fine_grid() {
    let dir = temp_dir("balayage");
    fs::write(
        dir.join("m.json"),
        r#"{"atoms":[{"re":0.015,"im":0.0,"w":0.5}]}"#,
    )
    .unwrap();
    let out = run(
        &["balayage", "m.json", "--genus", "0", "--ygrid", "-10:10:0.01", "--out", "res"],
        &dir,
    );
    stdout_of(&out);
    let csv = fs::read_to_string(dir.join("res/balayage.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("y,density,distribution"));
    let densities: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(densities.len(), 2001);
    let riemann: f64 = densities.iter().sum::<f64>() * 0.01;
    assert!(
        (riemann - 0.5).abs() <= 1e-3,
        "grid mass {riemann} drifted from the swept mass 0.5"
    );
    // Sidecar and manifest exist and carry the run parameters.
    let sidecar = fs::read_to_string(dir.join("res/balayage.json")).unwrap();
    assert!(sidecar.contains("\"source_mass_right\": 0.5"));
    let manifest = fs::read_to_string(dir.join("res/manifest.json")).unwrap();
    assert!(manifest.contains("\"command\": \"balayage\""));
    assert!(manifest.contains("-10:10:0.01"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn validate_round_trip_is_canonical_and_idempotent() {
    let dir = temp_dir("validate");
    // Unsorted atoms, a duplicate to merge, and an atom on the axis.
    fs::write(
        dir.join("m.json"),
        r#"{"atoms":[{"re":2.0,"im":1.0,"w":1.0},{"re":1.0,"im":0.0,"w":0.25},
            {"re":2.0,"im":1.0,"w":0.5},{"re":0.0,"im":3.0,"w":-1.0}]}"#,
    )
    .unwrap();
    let out = run(&["validate", "m.json", "--canonical-out", "c1.json"], &dir);
    let echo = stdout_of(&out);
    assert!(echo.contains("planar atoms: 2"));
    assert!(echo.contains("axis atoms: 1"));
    assert!(echo.contains("signed mass: 0.75"));
    assert!(echo.contains("total variation: 2.75"));
    let out = run(&["validate", "c1.json", "--canonical-out", "c2.json"], &dir);
    stdout_of(&out);
    assert_eq!(
        fs::read(dir.join("c1.json")).unwrap(),
        fs::read(dir.join("c2.json")).unwrap(),
        "canonicalization is not idempotent"
    );
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn harness_reruns_are_byte_identical() {
    let dir = temp_dir("harness");
    let flags = ["harness", "--seed", "3", "--seeds", "4", "--n-atoms", "14"];
    let out = run(&[&flags[..], &["--out", "one"]].concat(), &dir);
    stdout_of(&out);
    let out = run(&[&flags[..], &["--out", "two"]].concat(), &dir);
    stdout_of(&out);
    for name in ["harness.csv", "summary.json"] {
        assert_eq!(
            fs::read(dir.join("one").join(name)).unwrap(),
            fs::read(dir.join("two").join(name)).unwrap(),
            "{name} differs between identical runs"
        );
    }
    let csv = fs::read_to_string(dir.join("one/harness.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5, "expected header plus four seed rows");
    assert!(csv.lines().next().unwrap().starts_with("seed,n_atoms,c_hat,"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn lindelof_csv_has_monotone_running_sup() {
    let dir = temp_dir("lindelof");
    fs::write(
        dir.join("m.json"),
        r#"{"atoms":[{"re":1.0,"im":0.5,"w":1.0},{"re":3.0,"im":-2.0,"w":-1.0}]}"#,
    )
    .unwrap();
    let out = run(
        &["lindelof", "m.json", "--kind", "im", "--rmin", "2", "--rmax", "100", "--out", "res"],
        &dir,
    );
    stdout_of(&out);
    let csv = fs::read_to_string(dir.join("res/lindelof.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("r,partial,sup_so_far"));
    let mut prev_sup = 0.0f64;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 3);
        assert!(cols[1] >= 0.0);
        assert!(cols[2] + 1e-18 >= prev_sup, "running sup decreased");
        assert!(cols[2] + 1e-18 >= cols[1]);
        prev_sup = cols[2];
    }
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn growth_writes_one_flat_row() {
    let dir = temp_dir("growth");
    fs::write(dir.join("m.json"), r#"{"atoms":[{"re":1.2,"im":1.6,"w":1.0}]}"#).unwrap();
    let out = run(
        &["growth", "m.json", "--conv-p", "2", "--rmin", "1", "--rmax", "inf", "--out", "res"],
        &dir,
    );
    stdout_of(&out);
    let csv = fs::read_to_string(dir.join("res/growth.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("order,type_value,type_p,tail_lo,tail_hi,convergence_value,convergence_p,diverging")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 8);
    // |z| = 2, weight 1, p = 2: the tail integral is exactly 1/8.
    let conv: f64 = row[5].parse().unwrap();
    assert_eq!(conv, 0.125);
    assert_eq!(row[7], "0");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn exit_codes_and_error_json_follow_the_contract() {
    let dir = temp_dir("exitcodes");
    fs::write(dir.join("bad.json"), "not json").unwrap();
    fs::write(dir.join("origin.json"), r#"{"atoms":[{"re":0.0,"im":0.0,"w":1.0}]}"#).unwrap();

    // Input problems exit 2.
    let out = run(&["validate", "bad.json"], &dir);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(parsed["code"], "invalid_input");
    assert_eq!(parsed["context"]["command"], "validate");

    // Numeric failures exit 3.
    let out = run(&["balayage", "origin.json", "--genus", "1", "--out", "res"], &dir);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(parsed["code"], "genus1_ineligible");

    // Unknown flags are clap usage errors, also exit 2.
    let out = run(&["kernel", "--bogus"], &dir);
    assert_eq!(out.status.code(), Some(2));
    let _ = fs::remove_dir_all(&dir);
}
