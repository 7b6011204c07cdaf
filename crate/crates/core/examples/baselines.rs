// Run every pairwise baseline on the same ensemble.
//
// Run with `cargo run --example baselines`.

use ggi_core::baselines::{baseline_index, BaselineIndex, BaselineOptions, Metric, NeighborParams};
use ggi_core::transforms::{perturb_gaussian, random_gaussian_matrix};
use ggi_core::ConfigurationEnsemble;

pub fn run_example() -> ggi_core::Result<()> {
    let base = random_gaussian_matrix(120, 8, 5)?;
    let ensemble = ConfigurationEnsemble::new(
        (0..4).map(|l| perturb_gaussian(&base, 0.2, 50 + l)).collect::<Result<_, _>>()?,
    )?;

    let opts = BaselineOptions {
        neighbors: NeighborParams::new(5, Metric::Cosine),
        ..Default::default()
    };
    for index in BaselineIndex::ALL {
        let report = baseline_index(&ensemble, index, &opts)?;
        let pairs: Vec<String> = report
            .per_pair
            .iter()
            .map(|p| format!("({},{})={:.3}", p.l, p.m, p.score))
            .collect();
        println!("{:<20} {:>8.4}   {}", index.to_string(), report.aggregate, pairs.join(" "));
    }
    Ok(())
}

fn main() -> ggi_core::Result<()> {
    run_example()
}
