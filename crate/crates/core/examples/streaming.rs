// Compute the GGI over a large ensemble while holding one configuration in
// memory at a time.
//
// Run with `cargo run --release --example streaming`.

use std::time::Instant;

use ggi_core::transforms::{random_gaussian_matrix, random_graph_with_edges};
use ggi_core::{GgiAccumulator, GgiOptions};

pub fn run_example() -> ggi_core::Result<()> {
    let (n, d, edges, configs) = (20_000, 64, 200_000, 8);
    let graph = random_graph_with_edges(n, edges, 1)?;

    let start = Instant::now();
    let mut acc = GgiAccumulator::new(&graph, GgiOptions::default());
    for l in 0..configs {
        // In practice each matrix would be read from disk here.
        let z = random_gaussian_matrix(n, d, 100 + l)?;
        let s = acc.push(z)?;
        println!("config {l}: {s:+.3e}");
    }
    let report = acc.finish()?;
    println!("GGI = {:.3e} in {:.2?}", report.index_value, start.elapsed());
    Ok(())
}

fn main() -> ggi_core::Result<()> {
    run_example()
}
