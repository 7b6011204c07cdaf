//! Orthogonal Procrustes alignment between two embedding spaces.

use nalgebra::DMatrix;

use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};

/// Relative singular-value threshold below which the cross matrix is treated
/// as rank deficient.
const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ProcrustesAlignment {
    /// Orthogonal `d x d` matrix minimizing `||Zl * q - Zm||_F`.
    pub q: DMatrix<f64>,
    /// `||Zl * q - Zm||_F`.
    pub residual: f64,
    /// Set when the cross matrix is rank deficient and `q` is therefore not
    /// unique. `q` is still orthogonal and optimal.
    pub degenerate: bool,
}

/// Views an embedding matrix as an nalgebra matrix (copying).
pub fn to_dmatrix(z: &EmbeddingMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(z.rows(), z.cols(), z.as_slice())
}

/// Solves `argmin_q ||Zl q - Zm||_F` over orthogonal `q`.
///
/// With `Zl^T Zm = U S V^T`, the minimizer is `q = U V^T`. Only the `d x d`
/// cross matrix is decomposed.
pub fn procrustes_align(zl: &EmbeddingMatrix, zm: &EmbeddingMatrix) -> Result<ProcrustesAlignment> {
    if zl.rows() != zm.rows() || zl.cols() != zm.cols() {
        return Err(Error::shape(
            1,
            format!(
                "cannot align {}x{} onto {}x{}",
                zl.rows(),
                zl.cols(),
                zm.rows(),
                zm.cols()
            ),
        ));
    }
    let d = zl.cols();
    let mut cross = DMatrix::<f64>::zeros(d, d);
    for (a, b) in zl.row_iter().zip(zm.row_iter()) {
        for (r, &x) in a.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (c, &y) in b.iter().enumerate() {
                cross[(r, c)] += x * y;
            }
        }
    }

    let svd = cross.svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let q = u * v_t;

    let s_max = svd.singular_values.max();
    let s_min = svd.singular_values.min();
    let degenerate = s_max == 0.0 || s_min <= RANK_TOL * s_max;

    let residual = residual_of(zl, zm, &q);
    Ok(ProcrustesAlignment {
        q,
        residual,
        degenerate,
    })
}

/// `||Zl * omega - Zm||_F` for any `d x d` matrix `omega`.
pub fn residual_of(zl: &EmbeddingMatrix, zm: &EmbeddingMatrix, omega: &DMatrix<f64>) -> f64 {
    let d = zl.cols();
    let mut total = 0.0;
    let mut rotated = vec![0.0; d];
    for (a, b) in zl.row_iter().zip(zm.row_iter()) {
        rotate_row(a, omega, &mut rotated);
        total += rotated
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>();
    }
    total.sqrt()
}

/// `out = row * m` for a row vector.
pub(crate) fn rotate_row(row: &[f64], m: &DMatrix<f64>, out: &mut [f64]) {
    for (c, o) in out.iter_mut().enumerate() {
        *o = row.iter().enumerate().map(|(r, x)| x * m[(r, c)]).sum();
    }
}
