use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const CURVE: &str = "[curve]\nn = 2\nA = T1\nB = T2^4 - T2^3 - T1*T2\n";
const POINT: &str = "[point P]\nx = T2\ny = T2^2\n";

fn fixture_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/fixture.ini")
}

fn write_config(dir: &TempDir, body: &str) -> PathBuf {
    let path = dir.path().join("experiment.ini");
    fs::write(&path, body).unwrap();
    path
}

fn run(config: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffheight")).arg("--config").arg(config).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn height_of_fixture_point() {
    let o = run(&fixture_config(), &["height", "--point", "P"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["weil"], 2);
    assert!(v[0]["summary"].as_str().unwrap().starts_with("weil=2, canonical∈["));
}

#[test]
fn height_of_identity_is_exact() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, &format!("{CURVE}[point O]\ninfinity = true\n"));
    let o = run(&cfg, &["height"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)[0]["summary"], "weil=0, canonical=0 (exact)");
}

#[test]
fn off_curve_point_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, &format!("{CURVE}[point Q]\nx = T2\ny = T2\n"));
    let o = run(&cfg, &["height"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_config_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "[curve]\nn = 2\nA = T1 +\nB = 1\n");
    assert_eq!(run(&cfg, &["height"]).status.code(), Some(2));
    let cfg = write_config(&dir, &format!("{CURVE}[line]\nhypersurface = nowhere\n"));
    assert_eq!(run(&cfg, &["theorem-b"]).status.code(), Some(2));
}

#[test]
fn theorem_a_fixture_table() {
    let o = run(&fixture_config(), &["theorem-a"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("point,gamma,degree,m,lhs,rhs,defect,verdict"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    for r in &rows {
        if r[1] == "line" || r[1] == "conic" {
            assert_eq!(r[6], "0", "{r:?}");
        }
    }
    let bad0 = rows.iter().find(|r| r[1] == "bad" && r[3] == "0").unwrap();
    assert_eq!(bad0[6], "2");
}

#[test]
fn theorem_a_marks_pole_rows_and_flags_good_defects() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, &format!("{CURVE}{POINT}[hypersurface inf]\nform = S0\n"));
    let o = run(&cfg, &["theorem-a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P,inf,1,,,,,PoleAtGamma"));

    let cfg = write_config(&dir, &format!("{CURVE}{POINT}[hypersurface g]\nform = S2 - S0\n"));
    assert_eq!(run(&cfg, &["theorem-a"]).status.code(), Some(3));
}

#[test]
fn theorem_a_without_hypersurfaces() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, &format!("{CURVE}{POINT}"));
    let o = run(&cfg, &["theorem-a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "point,gamma,degree,m,lhs,rhs,defect,verdict\n");
}

#[test]
fn reports_are_byte_identical() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for d in [&a, &b] {
        let o = run(&fixture_config(), &["theorem-a", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["theorem_a.csv", "theorem_a.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

fn line_config(dir: &TempDir, bound: i64, generators: &str) -> PathBuf {
    write_config(
        dir,
        &format!(
            "{CURVE}{POINT}[hypersurface L]\nform = S2 - S0 - S1\n[line]\nhypersurface = L\nbound = {bound}\ngenerators = {generators}\n"
        ),
    )
}

#[test]
fn theorem_b_small_survey() {
    let dir = TempDir::new().unwrap();
    let cfg = line_config(&dir, 3, "P");
    let out = dir.path().join("out");
    let o = run(&cfg, &["theorem-b", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("t,fiber_class,hhat_P,level_P,det_value,det_radius,verdict,detail\n"));
    assert!(text.contains("[1:-1:0],nonsingular,,,,,torsion-collision,[2]P1 = O"));
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(out.join("theorem_b_summary.json")).unwrap()).unwrap();
    assert_eq!(summary["dependent"], 0);
    assert_eq!(summary["inconclusive"], 0);
    let rows = text.lines().count() - 1;
    assert_eq!(summary["processed"].as_u64().unwrap() + summary["skipped"].as_u64().unwrap(), rows as u64);
}

#[test]
fn theorem_b_bound_zero_has_one_parameter() {
    let dir = TempDir::new().unwrap();
    let cfg = line_config(&dir, 0, "P");
    let o = run(&cfg, &["theorem-b"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows, ["[1:0:1],cusp,,,,,skipped-bad-fiber,"]);
}

#[test]
fn theorem_b_without_generators() {
    let dir = TempDir::new().unwrap();
    let cfg = line_config(&dir, 2, "");
    let o = run(&cfg, &["theorem-b"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("t,fiber_class,det_value,det_radius,verdict,detail\n"));
    assert!(!text.contains("torsion-collision"));
}

#[test]
fn specialize_at_a_good_point() {
    let o = run(&fixture_config(), &["specialize", "--point", "P", "--at", "1:2:3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["fiber"]["delta"], "-995840");
    assert_eq!(v["specialized"], "[3:9:1]");
    assert_eq!(v["doubling"]["holds"], true);
    let o = run(&fixture_config(), &["specialize", "--point", "P", "--at", "0:1:0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_fixture_at_infinity() {
    let o = run(&fixture_config(), &["classify-infinity", "--point", "P", "--at", "0:1:0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["case"], "b");
}

#[test]
fn nonsingular_multiple_of_cusp_point() {
    let dir = TempDir::new().unwrap();
    let cfg =
        write_config(&dir, "[curve]\nn = 2\nA = 0\nB = T1^2\n[point P]\nx = 0\ny = T1\n[divisors]\nfactors = T1\n");
    let o = run(&cfg, &["nonsingular-multiple", "--point", "P"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["n"], 3);
}

#[test]
fn reduce_onto_a_conic() {
    let o = run(&fixture_config(), &["reduce", "--point", "P", "--gamma", "cusp_conic"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["reduced_point"], serde_json::json!(["U0^2*U1^2", "U1^4", "U0^4"]));
    assert_eq!(v["on_reduced_curve"], true);
    assert_eq!((v["lhs"].as_u64(), v["rhs"].as_u64()), (Some(4), Some(4)));
}
