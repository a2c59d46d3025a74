use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn speccx(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_speccx"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn f64_at(v: &Value, path: &[&str]) -> f64 {
    path.iter().fold(v, |v, k| &v[k]).as_f64().unwrap_or_else(|| panic!("missing {path:?}"))
}

#[test]
fn two_node_complexity() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("two_node.csv");
    let o = speccx(&["complexity", "--input", input.to_str().unwrap(), "--format", "csv"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(dir.path());
    assert_eq!(f64_at(&r, &["complexity", "F"]), 0.75);
    assert_eq!(f64_at(&r, &["total_complexity", "C"]), 0.75);
    assert_eq!(r["total_complexity"]["W"], "inf");
    let csv = fs::read_to_string(dir.path().join("eigenvalues.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(dir.path().join("spectrum.svg").exists());
}

#[test]
fn finite_weight_mixes_in_node_weights() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("two_node.csv");
    let weights = fixture("two_node_weights.csv");
    let o = speccx(
        &[
            "complexity",
            "--input",
            input.to_str().unwrap(),
            "--format",
            "csv",
            "--node-weights",
            weights.to_str().unwrap(),
            "--W",
            "1",
            "--gamma",
            "0.5",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(dir.path());
    // (0.5 * 3 + 0.75) / 2
    assert!((f64_at(&r, &["total_complexity", "C"]) - 1.125).abs() < 1e-6);
}

#[test]
fn three_cycle_clusters_into_singletons() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("three_cycle.txt");
    let o = speccx(&["cluster", "--input", input.to_str().unwrap()], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(dir.path());
    assert_eq!(r["clustering"]["k_min"], 3);
    assert_eq!(r["clustering"]["cluster_sizes"], serde_json::json!([1, 1, 1]));
    assert_eq!(f64_at(&r, &["clustering", "trim", "fraction"]), 1.0);
    for f in ["clusters.json", "clusters.dot", "trimmed.dot", "ratios.csv", "ratios_internal.csv", "curve.csv"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let ratios = fs::read_to_string(dir.path().join("ratios.csv")).unwrap();
    assert_eq!(ratios.lines().next().unwrap(), "cluster,size,C1,C2,C3");
}

#[test]
fn sources_and_sinks_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("cycle_with_tails.txt");
    let o = speccx(&["cluster", "--input", input.to_str().unwrap()], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(dir.path());
    assert_eq!(r["reduction"]["removed_sources"], 1);
    assert_eq!(r["reduction"]["sinks"], 1);
    assert_eq!(r["clustering"]["sinks"], 1);
}

#[test]
fn fiedler_splits_the_bridge() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("two_triangles.txt");
    let o = speccx(&["fiedler", "--input", input.to_str().unwrap()], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(dir.path());
    assert_eq!(r["fiedler"]["cluster_sizes"], serde_json::json!([3, 3]));
    assert!(dir.path().join("ratios.csv").exists());
}

#[test]
fn energy_of_a_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("three_cycle.txt");
    let o = speccx(&["energy", "--input", input.to_str().unwrap()], dir.path());
    assert!(o.status.success());
    // a permutation matrix has three unit singular values
    assert_eq!(f64_at(&report(dir.path()), &["energy", "energy"]), 3.0);
}

#[test]
fn small_sweep_writes_curve() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["baseline-sweep", "--n", "30", "--degrees", "1..3", "--realizations", "2", "--seed", "5"];
    let o = speccx(&args, dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("baseline.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(dir.path().join("baseline.svg").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let input = fixture("cycle_with_tails.txt");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert!(speccx(&["cluster", "--input", input.to_str().unwrap()], d.path()).status.success());
    }
    for f in ["report.json", "clusters.json", "curve.csv", "clusters.dot"] {
        let (x, y) = (fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap());
        assert_eq!(x, y, "{f} differs between runs");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = fixture("empty.txt");
    let code = |args: &[&str]| speccx(args, dir.path()).status.code().unwrap();
    assert_eq!(code(&["complexity", "--input", empty.to_str().unwrap()]), 4);
    assert_eq!(code(&["complexity", "--input", "/nonexistent/graph.txt"]), 3);
    assert_eq!(code(&["baseline-sweep", "--n", "10", "--degrees", "1", "--realizations", "0"]), 5);
    let input = fixture("three_cycle.txt");
    assert_eq!(code(&["complexity", "--input", input.to_str().unwrap(), "--W=-1"]), 5);
    assert_eq!(code(&["complexity", "--bogus"]), 2);
}
