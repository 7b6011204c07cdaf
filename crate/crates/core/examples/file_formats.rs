// Write an ensemble to disk, read it back through a manifest and produce the
// same JSON report the CLI writes.
//
// Run with `cargo run --example file_formats`.

use ggi_core::io::{load_embeddings, write_csv, write_gge1, EnsembleManifest, ResolvedManifest};
use ggi_core::transforms::{perturb_gaussian, random_gaussian_matrix};
use ggi_core::{ggi_index, ConfigurationEnsemble, GgiOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("ggi-file-formats-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    std::fs::write(dir.join("ring.edges"), "# node ids are arbitrary integers\n10 20\n20 30\n30 40\n40 10\n")?;
    let base = random_gaussian_matrix(4, 3, 1)?;
    write_gge1(dir.join("a.gge"), &base)?;
    write_csv(dir.join("b.csv"), &perturb_gaussian(&base, 0.1, 2)?)?;
    assert_eq!(load_embeddings(dir.join("a.gge"))?, base);

    let manifest = EnsembleManifest {
        graph_path: "ring.edges".into(),
        embedding_paths: vec!["a.gge".into(), "b.csv".into()],
        labels: Some(vec!["seed-1".into(), "seed-2".into()]),
        node_id_map: None,
        node_count: None,
    };
    let manifest_path = dir.join("manifest.json");
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;

    let resolved = ResolvedManifest::load(&manifest_path)?;
    let (loaded, _digests) = resolved.load_graph()?;
    println!("graph: {} nodes, {} edges, ids {:?}", loaded.node_count, loaded.edge_count, loaded.original_ids);
    let configs = (0..manifest.embedding_paths.len())
        .map(|l| load_embeddings(resolved.embedding_path(l)))
        .collect::<ggi_core::Result<Vec<_>>>()?;
    let report = ggi_index(&ConfigurationEnsemble::new(configs)?, &loaded.graph, &GgiOptions::default())?;
    println!("GGI = {:.6}", report.index_value);

    // The CLI produces the full report document, including input digests.
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = ["ggi", "ggi", "--manifest", manifest_path.to_str().ok_or("non-UTF-8 temp path")?];
    let code = ggi_core::cli::run_cli_with(argv, &mut stdout, &mut stderr);
    println!("ggi exited with {code}:\n{}", String::from_utf8_lossy(&stdout));

    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
