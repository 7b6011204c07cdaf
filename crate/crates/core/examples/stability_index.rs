// Compute the GGI for a small hand-built ensemble.
//
// Run with `cargo run --example stability_index`.

use ggi_core::{ggi_index, ConfigurationEnsemble, EmbeddingMatrix, GgiOptions, GraphTopology, StdConvention};

pub fn run_example() -> ggi_core::Result<()> {
    // A 4-cycle with one chord.
    let (graph, _) = GraphTopology::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])?;

    let z1 = EmbeddingMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0], vec![0.0, -1.0], vec![2.0, 2.0]])?;
    let z2 = EmbeddingMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 1.0], vec![2.0, -1.0], vec![-1.0, 0.0]])?;
    let ensemble = ConfigurationEnsemble::new(vec![z1, z2])?;

    let report = ggi_index(&ensemble, &graph, &GgiOptions::default())?;
    for s in &report.per_config {
        println!("config {}: mean edge inner product {:+.6}", s.config_index, s.score);
    }
    println!("GGI = {:.6} ({:.3}%)", report.index_value, report.index_percent);

    let sample = GgiOptions { std: StdConvention::Sample, ..Default::default() };
    println!("GGI with sample std = {:.6}", ggi_index(&ensemble, &graph, &sample)?.index_value);
    Ok(())
}

fn main() -> ggi_core::Result<()> {
    run_example()
}
