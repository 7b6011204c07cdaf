// Recover a hidden rotation with orthogonal Procrustes alignment.
//
// Run with `cargo run --example procrustes`.

use ggi_core::transforms::{apply_isometry, perturb_gaussian, random_gaussian_matrix, random_orthogonal};
use ggi_core::procrustes_align;

pub fn run_example() -> ggi_core::Result<()> {
    let d = 6;
    let z = random_gaussian_matrix(200, d, 1)?;
    let hidden = random_orthogonal(d, 2);
    let rotated = apply_isometry(&z, &hidden)?;

    let exact = procrustes_align(&z, &rotated)?;
    let err = (&exact.q - &hidden.t_matrix).abs().max();
    println!("exact copy:  residual {:.2e}, max |Q - T| {:.2e}", exact.residual, err);

    let noisy = perturb_gaussian(&rotated, 0.05, 3)?;
    let approx = procrustes_align(&z, &noisy)?;
    let err = (&approx.q - &hidden.t_matrix).abs().max();
    println!("noisy copy:  residual {:.3}, max |Q - T| {:.3}", approx.residual, err);
    Ok(())
}

fn main() -> ggi_core::Result<()> {
    run_example()
}
