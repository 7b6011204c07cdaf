mod common;

use std::path::Path;
use std::process::{Command, Output};

use ggi_core::io::{write_gge1, ReportDocument};
use ggi_core::transforms::random_gaussian_matrix;
use ggi_core::EmbeddingMatrix;
use serde_json::Value;

fn ggi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggi"))
        .args(args)
        .env("GGI_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn write_manifest(dir: &Path, graph: &str, embeddings: &[&str], extra: Value) -> String {
    let mut m = serde_json::json!({
        "graph_path": graph,
        "embedding_paths": embeddings,
    });
    if let Value::Object(map) = extra {
        for (k, v) in map {
            m[k] = v;
        }
    }
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string(&m).unwrap()).unwrap();
    path.display().to_string()
}

fn synth(dir: &Path, extra: &[&str]) -> String {
    let out = dir.display().to_string();
    let mut args = vec!["synth", "--out-dir", &out];
    args.extend_from_slice(extra);
    let o = ggi(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    dir.join("manifest.json").display().to_string()
}

#[test]
fn identical_configs_give_zero() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.edges"), "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let z = random_gaussian_matrix(4, 3, 1).unwrap();
    for name in ["a.gge", "b.gge", "c.gge"] {
        write_gge1(dir.path().join(name), &z).unwrap();
    }
    let manifest = write_manifest(dir.path(), "g.edges", &["a.gge", "b.gge", "c.gge"], Value::Null);
    let o = ggi(&["ggi", "--manifest", &manifest]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = ReportDocument::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(doc.index_value, 0.0);
    assert_eq!(doc.index_name, "GGI");
    assert_eq!(doc.inputs.len(), 4);
    assert!(doc.inputs.iter().all(|i| i.sha256.len() == 64));
    assert!(doc.timings_ms.is_none());
}

#[test]
fn synth_then_ggi_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = synth(
        dir.path(),
        &["--nodes", "100", "--avg-degree", "6", "--dim", "16", "--configs", "10", "--noise", "0.1", "--seed", "7"],
    );
    let a = ggi(&["ggi", "--manifest", &manifest]);
    let b = ggi(&["ggi", "--manifest", &manifest]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc = ReportDocument::from_json(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(doc.per_config.as_ref().unwrap().len(), 10);
    assert!(doc.index_value > 0.0);
    assert_eq!(doc.metadata["edge_count"], 300);
    assert_eq!(doc.per_config.unwrap()[3].label.as_deref(), Some("config_003"));

    // Same seed, fresh directory: identical files and report values.
    let dir2 = tempfile::tempdir().unwrap();
    let manifest2 = synth(
        dir2.path(),
        &["--nodes", "100", "--avg-degree", "6", "--dim", "16", "--configs", "10", "--noise", "0.1", "--seed", "7"],
    );
    let c = ggi(&["ggi", "--manifest", &manifest2]);
    let doc2 = ReportDocument::from_json(std::str::from_utf8(&c.stdout).unwrap()).unwrap();
    assert_eq!(doc2.index_value.to_bits(), doc.index_value.to_bits());
}

#[test]
fn synthetic_transforms_leave_ggi_unchanged() {
    let mut values = Vec::new();
    for transform in ["none", "orthogonal", "permutation", "translation"] {
        let dir = tempfile::tempdir().unwrap();
        let manifest = synth(
            dir.path(),
            &["--nodes", "80", "--avg-degree", "5", "--dim", "8", "--configs", "6", "--noise", "0.3", "--seed", "3", "--transform", transform],
        );
        let o = ggi(&["ggi", "--manifest", &manifest]);
        let doc = ReportDocument::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
        values.push(doc.index_value);
    }
    for v in &values[1..] {
        assert!((v - values[0]).abs() <= 1e-9, "{values:?}");
    }
}

#[test]
fn out_flag_std_and_no_preprocess() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = synth(dir.path(), &["--nodes", "40", "--avg-degree", "4", "--dim", "4", "--configs", "3", "--seed", "1"]);
    let out = dir.path().join("report.json");
    let out_s = out.display().to_string();
    let o = ggi(&["ggi", "--manifest", &manifest, "--out", &out_s, "--std", "sample", "--no-preprocess", "--timings"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let doc = ReportDocument::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.options["std"], "sample");
    assert_eq!(doc.options["preprocess"], false);
    assert!(doc.timings_ms.is_some());
}

#[test]
fn baseline_wasserstein_matches_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.edges"), "0 1\n1 2\n2 3\n3 4\n").unwrap();
    let a = random_gaussian_matrix(5, 3, 11).unwrap();
    let b = random_gaussian_matrix(5, 3, 12).unwrap();
    write_gge1(dir.path().join("a.gge"), &a).unwrap();
    write_gge1(dir.path().join("b.gge"), &b).unwrap();
    let manifest = write_manifest(dir.path(), "g.edges", &["a.gge", "b.gge"], Value::Null);
    let o = ggi(&["baseline", "--manifest", &manifest, "--index", "wasserstein"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = ReportDocument::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!((doc.index_value - common::wasserstein(&a, &b)).abs() <= 1e-10);
    assert_eq!(doc.per_pair.unwrap().len(), 1);
}

#[test]
fn every_baseline_runs() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = synth(dir.path(), &["--nodes", "30", "--avg-degree", "4", "--dim", "4", "--configs", "3", "--seed", "5", "--format", "csv"]);
    for index in ["aligned-cosine", "knn-jaccard", "second-order-cosine", "hausdorff", "wasserstein"] {
        let o = ggi(&["baseline", "--manifest", &manifest, "--index", index, "--k", "5", "--metric", "euclidean", "--preprocess"]);
        assert!(o.status.success(), "{index}: {}", String::from_utf8_lossy(&o.stderr));
        let doc = ReportDocument::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
        assert_eq!(doc.index_name, index);
        assert_eq!(doc.per_pair.unwrap().len(), 3);
    }
}

#[test]
fn validate_reports_shapes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.edges"), "10 20\n20 30\n30 30\n").unwrap();
    write_gge1(dir.path().join("a.gge"), &random_gaussian_matrix(3, 8, 1).unwrap()).unwrap();
    std::fs::write(dir.path().join("b.csv"), "1,2\n3,4\n5,6\n").unwrap();
    let manifest = write_manifest(dir.path(), "g.edges", &["a.gge", "b.csv"], Value::Null);
    let o = ggi(&["validate", "--manifest", &manifest]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["dims"], serde_json::json!([8, 2]));
    assert_eq!(v["summary"]["node_count"], 3);
    assert_eq!(v["graph"]["self_loops_dropped"], 1);

    // GGI accepts mixed dimensions; aligned cosine does not.
    assert!(ggi(&["ggi", "--manifest", &manifest]).status.success());
    let o = ggi(&["baseline", "--manifest", &manifest, "--index", "aligned-cosine"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shape_mismatch_names_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.edges"), "0 1\n1 2\n").unwrap();
    write_gge1(dir.path().join("a.gge"), &random_gaussian_matrix(3, 2, 1).unwrap()).unwrap();
    write_gge1(dir.path().join("b.gge"), &random_gaussian_matrix(4, 2, 1).unwrap()).unwrap();
    let manifest = write_manifest(dir.path(), "g.edges", &["a.gge", "b.gge"], Value::Null);
    let o = ggi(&["ggi", "--manifest", &manifest]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("configuration 1"), "{err}");
}

#[test]
fn id_map_manifest() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.edges"), "100 200\n200 300\n").unwrap();
    std::fs::write(dir.path().join("ids.txt"), "100 0\n200 1\n300 2\n400 3\n").unwrap();
    let z = EmbeddingMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]).unwrap();
    write_gge1(dir.path().join("a.gge"), &z).unwrap();
    write_gge1(dir.path().join("b.gge"), &z).unwrap();
    let manifest = write_manifest(dir.path(), "g.edges", &["a.gge", "b.gge"], serde_json::json!({"node_id_map": "ids.txt"}));
    let o = ggi(&["ggi", "--manifest", &manifest]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = ReportDocument::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(doc.metadata["node_count"], 4);
    assert_eq!(doc.inputs[1].role, "node_id_map");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ggi(&[]).status.code(), Some(2));
    assert_eq!(ggi(&["ggi"]).status.code(), Some(2));
    assert_eq!(ggi(&["baseline", "--manifest", "m.json", "--index", "procrustes"]).status.code(), Some(2));
    assert_eq!(ggi(&["ggi", "--manifest", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(ggi(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_thread_setting_is_an_input_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_ggi"))
        .args(["ggi", "--manifest", "m.json"])
        .env("GGI_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
