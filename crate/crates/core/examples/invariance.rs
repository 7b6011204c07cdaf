// The GGI ignores node relabeling, rotations, translations and the order of
// configurations. A point-cloud distance such as Hausdorff does not.
//
// Run with `cargo run --example invariance`.

use ggi_core::baselines::hausdorff_index;
use ggi_core::transforms::{
    apply_isometry, apply_permutation, perturb_gaussian, random_gaussian_matrix, random_graph,
    random_orthogonal, random_translation, NodePermutation,
};
use ggi_core::{ggi_index, ConfigurationEnsemble, EmbeddingMatrix, GgiOptions, GraphTopology};

fn ggi(configs: Vec<EmbeddingMatrix>, graph: &GraphTopology) -> ggi_core::Result<f64> {
    Ok(ggi_index(&ConfigurationEnsemble::new(configs)?, graph, &GgiOptions::default())?.index_value)
}

pub fn run_example() -> ggi_core::Result<()> {
    let (n, d) = (300, 16);
    let graph = random_graph(n, 6.0, 1)?;
    let base = random_gaussian_matrix(n, d, 2)?;
    let configs: Vec<_> = (0..5).map(|l| perturb_gaussian(&base, 0.3, 10 + l)).collect::<Result<_, _>>()?;
    let reference = ggi(configs.clone(), &graph)?;
    println!("reference GGI          {reference:.12}");

    // Each configuration gets its own rotation followed by its own shift.
    let moved: Vec<_> = configs
        .iter()
        .enumerate()
        .map(|(l, z)| {
            let iso = random_orthogonal(d, 100 + l as u64).then(&random_translation(d, 10.0, 200 + l as u64));
            apply_isometry(z, &iso)
        })
        .collect::<Result<_, _>>()?;
    println!("rotated + translated   {:.12}", ggi(moved.clone(), &graph)?);

    let sigma = NodePermutation::random(n, 3);
    let mut relabeled_graph = graph.clone();
    let mut relabeled = Vec::new();
    for z in &configs {
        let (pz, pg) = apply_permutation(z, &graph, &sigma)?;
        relabeled.push(pz);
        relabeled_graph = pg;
    }
    println!("nodes relabeled        {:.12}", ggi(relabeled, &relabeled_graph)?);

    let mut reversed = configs.clone();
    reversed.reverse();
    println!("configs reversed       {:.12}", ggi(reversed, &graph)?);

    let before = hausdorff_index(&ConfigurationEnsemble::new(configs)?)?.aggregate;
    let after = hausdorff_index(&ConfigurationEnsemble::new(moved)?)?.aggregate;
    println!("Hausdorff before/after {before:.4} / {after:.4}");
    Ok(())
}

fn main() -> ggi_core::Result<()> {
    run_example()
}
