//! Node-embedding matrices and the centering/normalization step applied
//! before Gram summaries are taken.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Post-centering row norms below this are treated as zero rows.
pub const DEGENERATE_NORM: f64 = 1e-15;

/// One configuration's node embeddings: `rows` nodes by `cols` dimensions,
/// stored row-major. Every value is finite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl EmbeddingMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "embedding matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} values, got {}",
                rows.saturating_mul(cols),
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row vectors, which must all have the same length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} values, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row_iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.cols)
    }

    /// Size of the value buffer in bytes.
    pub fn byte_size(&self) -> usize {
        self.data.len() * std::mem::size_of::<f64>()
    }

    /// Column means (the mean embedding over all nodes).
    pub fn column_means(&self) -> Vec<f64> {
        let mut means = vec![0.0; self.cols];
        for row in self.row_iter() {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        let n = self.rows as f64;
        means.iter_mut().for_each(|m| *m /= n);
        means
    }

    /// In-place form of [`preprocess_center_normalize`]; returns the number
    /// of degenerate rows.
    pub fn center_normalize_in_place(&mut self) -> Result<usize> {
        let means = self.column_means();
        let mut degenerate = 0;
        for row in self.data.chunks_exact_mut(self.cols) {
            for (v, m) in row.iter_mut().zip(&means) {
                *v -= m;
            }
            let norm = dot(row, row).sqrt();
            if !norm.is_finite() {
                return Err(Error::NonFiniteInput { row: 0, col: 0 });
            }
            if norm < DEGENERATE_NORM {
                row.iter_mut().for_each(|v| *v = 0.0);
                degenerate += 1;
            } else {
                row.iter_mut().for_each(|v| *v /= norm);
            }
        }
        if let Some(pos) = self.data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput {
                row: pos / self.cols,
                col: pos % self.cols,
            });
        }
        Ok(degenerate)
    }
}

/// Output of [`preprocess_center_normalize`].
#[derive(Clone, Debug, PartialEq)]
pub struct Preprocessed {
    pub matrix: EmbeddingMatrix,
    /// Rows that were (numerically) zero after centering and were left as zeros.
    pub degenerate_rows: usize,
}

/// Subtracts the mean embedding from every row, then scales each row to unit
/// L2 norm. Rows whose centered norm is below [`DEGENERATE_NORM`] become zero
/// rows and are counted.
///
/// After this step the Gram entry `<z_i, z_j>` is the cosine similarity of the
/// centered embeddings, so edge averages lie in `[-1, 1]`.
pub fn preprocess_center_normalize(z: &EmbeddingMatrix) -> Result<Preprocessed> {
    let mut matrix = z.clone();
    let degenerate_rows = matrix.center_normalize_in_place()?;
    Ok(Preprocessed {
        matrix,
        degenerate_rows,
    })
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cosine similarity, defined as 0 when either vector is zero.
#[inline]
pub(crate) fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let na = dot(a, a).sqrt();
    let nb = dot(b, b).sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot(a, b) / (na * nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &EmbeddingMatrix, b: &EmbeddingMatrix) -> f64 {
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn rejects_non_finite_values() {
        let err = EmbeddingMatrix::from_vec(2, 2, vec![1.0, 0.0, f64::NAN, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteInput { row: 1, col: 0 }));
        let err = EmbeddingMatrix::from_vec(1, 1, vec![f64::INFINITY]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteInput { .. }));
    }

    #[test]
    fn rejects_empty_and_ragged() {
        assert!(EmbeddingMatrix::from_vec(0, 3, vec![]).is_err());
        assert!(EmbeddingMatrix::from_vec(2, 2, vec![1.0; 3]).is_err());
        assert!(EmbeddingMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn already_centered_unit_rows_are_unchanged() {
        let z = EmbeddingMatrix::from_rows(&[[1.0, 0.0], [-1.0, 0.0]]).unwrap();
        let p = preprocess_center_normalize(&z).unwrap();
        assert_eq!(p.degenerate_rows, 0);
        assert_eq!(p.matrix, z);
    }

    #[test]
    fn centers_then_normalizes() {
        let z = EmbeddingMatrix::from_rows(&[[2.0, 0.0], [0.0, 2.0]]).unwrap();
        let p = preprocess_center_normalize(&z).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = EmbeddingMatrix::from_rows(&[[h, -h], [-h, h]]).unwrap();
        assert_eq!(p.degenerate_rows, 0);
        assert!(max_abs_diff(&p.matrix, &expected) < 1e-15);
    }

    #[test]
    fn identical_rows_become_degenerate_zeros() {
        let z = EmbeddingMatrix::from_rows(&[[5.0, 5.0], [5.0, 5.0]]).unwrap();
        let p = preprocess_center_normalize(&z).unwrap();
        assert_eq!(p.degenerate_rows, 2);
        assert!(p.matrix.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn overflowing_centering_is_reported() {
        let z = EmbeddingMatrix::from_rows(&[[f64::MAX], [f64::MAX], [-f64::MAX]]).unwrap();
        assert!(matches!(
            preprocess_center_normalize(&z),
            Err(Error::NonFiniteInput { .. })
        ));
    }

    #[test]
    fn cosine_of_zero_vector_is_zero() {
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 2.0]), 0.0);
        assert!((cosine(&[1.0, 0.0], &[-2.0, 0.0]) + 1.0).abs() < 1e-15);
    }
}
