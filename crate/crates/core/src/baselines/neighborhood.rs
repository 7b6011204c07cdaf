use rayon::prelude::*;

use super::{knn_neighbors, unordered_pairs, BaselineIndex, NeighborList, NeighborParams, PairScore, PairwiseIndexReport};
use crate::embedding::{cosine, EmbeddingMatrix};
use crate::ensemble::ConfigurationEnsemble;
use crate::error::{Error, Result};

fn all_neighbors(ensemble: &ConfigurationEnsemble, params: &NeighborParams) -> Result<Vec<NeighborList>> {
    params.check(ensemble.node_count())?;
    ensemble
        .configs()
        .par_iter()
        .map(|z| knn_neighbors(z, params))
        .collect()
}

fn check_same_nodes(a: &NeighborList, b: &NeighborList) -> Result<()> {
    if a.node_count() != b.node_count() || a.k() != b.k() {
        return Err(Error::shape(
            1,
            format!(
                "neighbor lists differ in shape: {} nodes, k={} vs {} nodes, k={}",
                a.node_count(),
                a.k(),
                b.node_count(),
                b.k()
            ),
        ));
    }
    Ok(())
}

/// Sorted union of two neighbor lists.
fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

/// Mean over nodes of the Jaccard overlap of the two configurations' kNN sets.
pub fn knn_jaccard_pair(a: &NeighborList, b: &NeighborList) -> Result<f64> {
    check_same_nodes(a, b)?;
    let per_node: Vec<f64> = (0..a.node_count())
        .into_par_iter()
        .map(|i| {
            let (na, nb) = (a.neighbors(i), b.neighbors(i));
            let inter = na.iter().filter(|x| nb.contains(x)).count();
            let union = 2 * a.k() - inter;
            inter as f64 / union as f64
        })
        .collect();
    Ok(super::mean(per_node.into_iter()))
}

pub fn knn_jaccard_index(
    ensemble: &ConfigurationEnsemble,
    params: &NeighborParams,
) -> Result<PairwiseIndexReport> {
    let lists = all_neighbors(ensemble, params)?;
    let per_pair = unordered_pairs(ensemble.len())
        .map(|(l, m)| {
            Ok(PairScore {
                l,
                m,
                score: knn_jaccard_pair(&lists[l], &lists[m])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairwiseIndexReport::from_pairs(BaselineIndex::KnnJaccard, per_pair))
}

/// Second-order cosine between two configurations.
///
/// For node `i`, the neighbors from both configurations are merged into one
/// id-sorted list `u`. Within each configuration, node `i`'s cosine
/// similarities to the members of `u` form a vector; the node's score is the
/// cosine of those two vectors. Returns the mean over nodes and the number of
/// nodes whose vectors were all zero (scored 0).
pub fn second_order_cosine_pair(
    zl: &EmbeddingMatrix,
    zm: &EmbeddingMatrix,
    nl: &NeighborList,
    nm: &NeighborList,
) -> Result<(f64, usize)> {
    check_same_nodes(nl, nm)?;
    if zl.rows() != zm.rows() || zl.rows() != nl.node_count() {
        return Err(Error::shape(1, "embeddings and neighbor lists disagree on node count"));
    }
    let per_node: Vec<(f64, bool)> = (0..zl.rows())
        .into_par_iter()
        .map(|i| {
            let u = sorted_union(nl.neighbors(i), nm.neighbors(i));
            let sl: Vec<f64> = u.iter().map(|&j| cosine(zl.row(i), zl.row(j))).collect();
            let sm: Vec<f64> = u.iter().map(|&j| cosine(zm.row(i), zm.row(j))).collect();
            let zero = sl.iter().all(|&v| v == 0.0) || sm.iter().all(|&v| v == 0.0);
            (cosine(&sl, &sm), zero)
        })
        .collect();
    let zeros = per_node.iter().filter(|p| p.1).count();
    Ok((super::mean(per_node.into_iter().map(|p| p.0)), zeros))
}

pub fn second_order_cosine_index(
    ensemble: &ConfigurationEnsemble,
    params: &NeighborParams,
) -> Result<PairwiseIndexReport> {
    let lists = all_neighbors(ensemble, params)?;
    let mut zero_vectors = 0;
    let mut per_pair = Vec::new();
    for (l, m) in unordered_pairs(ensemble.len()) {
        let (score, zeros) =
            second_order_cosine_pair(ensemble.get(l), ensemble.get(m), &lists[l], &lists[m])?;
        zero_vectors += zeros;
        per_pair.push(PairScore { l, m, score });
    }
    let mut report = PairwiseIndexReport::from_pairs(BaselineIndex::SecondOrderCosine, per_pair);
    report.zero_vectors = zero_vectors;
    Ok(report)
}
