use std::cmp::Ordering;

use rayon::prelude::*;

use super::{Metric, NeighborParams};
use crate::embedding::{dot, EmbeddingMatrix};
use crate::error::Result;

/// Exact k nearest neighbours of every node, most similar first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborList {
    k: usize,
    ids: Vec<usize>,
}

impl NeighborList {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.ids.len() / self.k
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.ids[node * self.k..(node + 1) * self.k]
    }
}

/// Brute-force exact kNN. Self is excluded; ties are broken by ascending
/// node id. Cosine similarity with a zero vector is 0.
pub fn knn_neighbors(z: &EmbeddingMatrix, params: &NeighborParams) -> Result<NeighborList> {
    let n = z.rows();
    params.check(n)?;
    let k = params.k;
    let norms: Vec<f64> = z.row_iter().map(|r| dot(r, r).sqrt()).collect();

    // Smaller key = closer.
    let key = |i: usize, j: usize| -> f64 {
        match params.metric {
            Metric::Cosine => {
                let denom = norms[i] * norms[j];
                if denom == 0.0 {
                    0.0
                } else {
                    -(dot(z.row(i), z.row(j)) / denom)
                }
            }
            Metric::Euclidean => z
                .row(i)
                .iter()
                .zip(z.row(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum(),
        }
    };
    let order = |a: &(f64, usize), b: &(f64, usize)| -> Ordering {
        a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
    };

    let ids: Vec<usize> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut cand: Vec<(f64, usize)> =
                (0..n).filter(|&j| j != i).map(|j| (key(i, j), j)).collect();
            if k < cand.len() {
                cand.select_nth_unstable_by(k - 1, order);
                cand.truncate(k);
            }
            cand.sort_unstable_by(order);
            cand.into_iter().map(|(_, j)| j)
        })
        .collect();
    Ok(NeighborList { k, ids })
}
