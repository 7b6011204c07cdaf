// More noise between configurations gives a larger GGI.
//
// Run with `cargo run --release --example noise_sweep`.

use ggi_core::transforms::{perturb_gaussian, random_gaussian_matrix, random_graph};
use ggi_core::{ggi_index, ConfigurationEnsemble, GgiOptions};

pub fn run_example() -> ggi_core::Result<()> {
    let (n, d, configs) = (1000, 32, 20);
    let graph = random_graph(n, 10.0, 7)?;
    let base = random_gaussian_matrix(n, d, 8)?;

    println!("{:>8}  {:>12}", "noise", "GGI %");
    for noise in [0.0, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0] {
        let ensemble = ConfigurationEnsemble::new(
            (0..configs).map(|l| perturb_gaussian(&base, noise, 1000 + l)).collect::<Result<_, _>>()?,
        )?;
        let report = ggi_index(&ensemble, &graph, &GgiOptions::default())?;
        println!("{noise:>8}  {:>12.6}", report.index_percent);
    }
    Ok(())
}

fn main() -> ggi_core::Result<()> {
    run_example()
}
