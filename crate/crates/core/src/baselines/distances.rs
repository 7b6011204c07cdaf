use rayon::prelude::*;

use super::assignment::solve_assignment;
use super::{unordered_pairs, BaselineIndex, PairScore, PairwiseIndexReport};
use crate::embedding::EmbeddingMatrix;
use crate::ensemble::ConfigurationEnsemble;
use crate::error::{Error, Result};

/// Largest node count for which the dense Wasserstein cost matrix is built.
pub const DEFAULT_WASSERSTEIN_CAP: usize = 10_000;

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Largest squared distance from a point of `from` to its nearest point in `to`.
fn directed_sq(from: &EmbeddingMatrix, to: &EmbeddingMatrix) -> f64 {
    (0..from.rows())
        .into_par_iter()
        .map(|i| {
            to.row_iter()
                .map(|b| sq_dist(from.row(i), b))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance between two point clouds under the Euclidean
/// metric. Row counts may differ; dimensions may not.
pub fn hausdorff_distance(a: &EmbeddingMatrix, b: &EmbeddingMatrix) -> Result<f64> {
    if a.cols() != b.cols() {
        return Err(Error::shape(
            1,
            format!("dimension {} differs from {}", b.cols(), a.cols()),
        ));
    }
    Ok(directed_sq(a, b).max(directed_sq(b, a)).sqrt())
}

pub fn hausdorff_index(ensemble: &ConfigurationEnsemble) -> Result<PairwiseIndexReport> {
    ensemble.require_equal_dims()?;
    let per_pair = unordered_pairs(ensemble.len())
        .map(|(l, m)| {
            Ok(PairScore {
                l,
                m,
                score: hausdorff_distance(ensemble.get(l), ensemble.get(m))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairwiseIndexReport::from_pairs(BaselineIndex::Hausdorff, per_pair))
}

/// `(min over bijections eta of sum_i ||a_i - b_eta(i)||^2)^(1/2)`, solved
/// exactly as a linear assignment on the squared-distance matrix.
pub fn wasserstein_distance(a: &EmbeddingMatrix, b: &EmbeddingMatrix, cap: usize) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::shape(
            1,
            format!("{}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        ));
    }
    let n = a.rows();
    if n > cap {
        return Err(Error::InstanceTooLarge { nodes: n, cap });
    }
    let mut cost = vec![0.0; n * n];
    cost.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, c) in row.iter_mut().enumerate() {
            *c = sq_dist(a.row(i), b.row(j));
        }
    });
    let assignment = solve_assignment(n, &cost)?;
    Ok(assignment.cost.max(0.0).sqrt())
}

pub fn wasserstein_index(ensemble: &ConfigurationEnsemble, cap: usize) -> Result<PairwiseIndexReport> {
    ensemble.require_equal_dims()?;
    if ensemble.node_count() > cap {
        return Err(Error::InstanceTooLarge {
            nodes: ensemble.node_count(),
            cap,
        });
    }
    let per_pair = unordered_pairs(ensemble.len())
        .map(|(l, m)| {
            Ok(PairScore {
                l,
                m,
                score: wasserstein_distance(ensemble.get(l), ensemble.get(m), cap)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairwiseIndexReport::from_pairs(BaselineIndex::Wasserstein, per_pair))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(x: f64, y: f64) -> EmbeddingMatrix {
        EmbeddingMatrix::from_rows(&[[x, y]]).unwrap()
    }

    #[test]
    fn single_points() {
        assert_eq!(hausdorff_distance(&point(0.0, 0.0), &point(3.0, 4.0)).unwrap(), 5.0);
        assert_eq!(
            wasserstein_distance(&point(0.0, 0.0), &point(3.0, 4.0), 10).unwrap(),
            5.0
        );
    }

    #[test]
    fn identical_sets_are_zero() {
        let z = EmbeddingMatrix::from_rows(&[[0.0, 1.0], [2.0, -1.0], [0.5, 0.5]]).unwrap();
        let e = ConfigurationEnsemble::new(vec![z.clone(), z]).unwrap();
        assert_eq!(hausdorff_index(&e).unwrap().aggregate, 0.0);
        assert_eq!(wasserstein_index(&e, 10).unwrap().aggregate, 0.0);
    }

    #[test]
    fn hausdorff_ignores_row_order_wasserstein_finds_bijection() {
        let a = EmbeddingMatrix::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let b = EmbeddingMatrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 0.0);
        assert_eq!(wasserstein_distance(&a, &b, 10).unwrap(), 0.0);
    }

    #[test]
    fn hausdorff_is_asymmetric_max() {
        // a = {0}, b = {0, 10}: directed a->b is 0, b->a is 10.
        let a = EmbeddingMatrix::from_rows(&[[0.0]]).unwrap();
        let b = EmbeddingMatrix::from_rows(&[[0.0], [10.0]]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 10.0);
        assert_eq!(hausdorff_distance(&b, &a).unwrap(), 10.0);
    }

    #[test]
    fn cap_and_shape_errors() {
        let a = EmbeddingMatrix::from_rows(&[[0.0], [1.0], [2.0]]).unwrap();
        let e = ConfigurationEnsemble::new(vec![a.clone(), a.clone()]).unwrap();
        assert!(matches!(
            wasserstein_index(&e, 2),
            Err(Error::InstanceTooLarge { nodes: 3, cap: 2 })
        ));
        let b = EmbeddingMatrix::from_rows(&[[0.0, 1.0], [1.0, 1.0], [2.0, 1.0]]).unwrap();
        assert!(hausdorff_distance(&a, &b).is_err());
        assert!(wasserstein_distance(&a, &b, 10).is_err());
    }
}
