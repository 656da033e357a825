use std::path::PathBuf;
use std::process::{Command, Output};

fn buckle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buckle"))
        .args(args)
        .env_remove("BUCKLE_TOL")
        .output()
        .expect("run buckle")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn check(args: &[&str], name: &str) {
    let out = buckle(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{args:?}");
}

#[test]
fn golden_outputs() {
    check(&["table", "--a", "0,0.1,0.5"], "table.csv");
    check(&["table", "--a", "0,0.1,0.5", "--format", "json"], "table.json");
    check(&["punctured"], "punctured.csv");
    check(&["disk", "--k", "0", "--t", "1", "--R", "1"], "disk.csv");
    check(&["rect", "--ell", "1"], "rect.csv");
    check(&["rect", "--ell", "1", "--m", "2", "--k", "2"], "rect_branch.csv");
    check(&["branches", "--k", "0,1", "--a-range", "0:0.1:0.05"], "branches.csv");
    check(&["rect-sweep", "--ell-range", "0.5:1:0.25"], "rect_sweep.csv");
}

#[test]
fn argument_errors_exit_one() {
    let out = buckle(&["table", "--a", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inner radius must lie in [0,1)"));
    assert_eq!(buckle(&["table", "--a", "0.97"]).status.code(), Some(1));
    assert_eq!(buckle(&["--precision", "3", "punctured"]).status.code(), Some(1));
    assert_eq!(buckle(&["nonsense"]).status.code(), Some(1));
    assert_eq!(buckle(&["disk", "--t", "0"]).status.code(), Some(1));
    assert_eq!(buckle(&["--help"]).status.code(), Some(0));
}

#[test]
fn csv_and_json_encode_the_same_values() {
    let csv = String::from_utf8(buckle(&["table", "--a", "0.2,0.3", "--precision", "17"]).stdout).unwrap();
    let json = buckle(&["table", "--a", "0.2,0.3", "--precision", "17", "--format", "json"]).stdout;
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&json).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (line, row) in lines.zip(&rows) {
        for (key, field) in header.iter().zip(line.split(',')) {
            let from_csv: f64 = field.parse().unwrap();
            assert_eq!(from_csv.to_bits(), row[key].as_f64().unwrap().to_bits(), "{key}");
        }
    }
}

#[test]
fn output_is_independent_of_worker_count() {
    let args = ["branches", "--k", "0,2,4", "--a-range", "0.1:0.3:0.1"];
    let one = buckle(&[&["--parallel", "1"], &args[..]].concat()).stdout;
    let four = buckle(&[&["--parallel", "4"], &args[..]].concat()).stdout;
    let again = buckle(&args).stdout;
    assert_eq!(one, four);
    assert_eq!(one, again);
}

#[test]
fn tolerance_flag_overrides_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_buckle"))
        .args(["punctured"])
        .env("BUCKLE_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let ok = Command::new(env!("CARGO_BIN_EXE_buckle"))
        .args(["punctured", "--tol", "1e-12"])
        .env("BUCKLE_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), golden("punctured.csv"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("buckle-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("disk.csv");
    let out = buckle(&["disk", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("disk.csv"));
    std::fs::remove_dir_all(&dir).unwrap();
}
