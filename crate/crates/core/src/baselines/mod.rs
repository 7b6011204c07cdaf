//! Prior geometric stability indices: aligned cosine, kNN-Jaccard,
//! second-order cosine, Hausdorff and Wasserstein.
//!
//! Every index here compares configurations pairwise. Pairs are unordered
//! (`l < m`, self-pairs excluded); the aggregate is the mean of the per-pair
//! scores, where each node-level index first averages over nodes.

mod aligned;
pub mod assignment;
mod distances;
mod knn;
mod neighborhood;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use aligned::{aligned_cosine_index, aligned_cosine_pair};
pub use distances::{
    hausdorff_distance, hausdorff_index, wasserstein_distance, wasserstein_index,
    DEFAULT_WASSERSTEIN_CAP,
};
pub use knn::{knn_neighbors, NeighborList};
pub use neighborhood::{
    knn_jaccard_index, knn_jaccard_pair, second_order_cosine_index, second_order_cosine_pair,
};

use crate::embedding::EmbeddingMatrix;
use crate::ensemble::ConfigurationEnsemble;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Cosine,
    Euclidean,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Cosine => "cosine",
            Metric::Euclidean => "euclidean",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborParams {
    pub k: usize,
    pub metric: Metric,
}

impl NeighborParams {
    pub fn new(k: usize, metric: Metric) -> Self {
        Self { k, metric }
    }

    pub(crate) fn check(&self, nodes: usize) -> Result<()> {
        if self.k == 0 || self.k >= nodes {
            return Err(Error::KTooLarge { k: self.k, nodes });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub l: usize,
    pub m: usize,
    pub score: f64,
}

pub const PAIR_CONVENTION: &str = "unordered pairs l < m, self-pairs excluded";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseIndexReport {
    pub index_name: String,
    pub per_pair: Vec<PairScore>,
    /// Mean of `per_pair` scores.
    pub aggregate: f64,
    pub pair_convention: String,
    /// Node-pairs whose second-order similarity vector was all zero (scored 0).
    #[serde(default)]
    pub zero_vectors: usize,
    /// Pairs whose Procrustes alignment was not unique.
    #[serde(default)]
    pub degenerate_alignments: usize,
}

impl PairwiseIndexReport {
    pub(crate) fn from_pairs(index: BaselineIndex, per_pair: Vec<PairScore>) -> Self {
        let aggregate = mean(per_pair.iter().map(|p| p.score));
        Self {
            index_name: index.to_string(),
            per_pair,
            aggregate,
            pair_convention: PAIR_CONVENTION.to_string(),
            zero_vectors: 0,
            degenerate_alignments: 0,
        }
    }
}

/// All `(l, m)` with `l < m < n`, in lexicographic order.
pub fn unordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |l| (l + 1..n).map(move |m| (l, m)))
}

pub(crate) fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineIndex {
    AlignedCosine,
    KnnJaccard,
    SecondOrderCosine,
    Hausdorff,
    Wasserstein,
}

impl BaselineIndex {
    pub const ALL: [BaselineIndex; 5] = [
        BaselineIndex::AlignedCosine,
        BaselineIndex::KnnJaccard,
        BaselineIndex::SecondOrderCosine,
        BaselineIndex::Hausdorff,
        BaselineIndex::Wasserstein,
    ];
}

impl fmt::Display for BaselineIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaselineIndex::AlignedCosine => "aligned-cosine",
            BaselineIndex::KnnJaccard => "knn-jaccard",
            BaselineIndex::SecondOrderCosine => "second-order-cosine",
            BaselineIndex::Hausdorff => "hausdorff",
            BaselineIndex::Wasserstein => "wasserstein",
        })
    }
}

impl FromStr for BaselineIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaselineIndex::ALL
            .into_iter()
            .find(|i| i.to_string() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown baseline index {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselineOptions {
    pub neighbors: NeighborParams,
    /// Apply the GGI centering/normalization to every configuration first.
    pub preprocess: bool,
    pub wasserstein_cap: usize,
}

impl Default for BaselineOptions {
    fn default() -> Self {
        Self {
            neighbors: NeighborParams::new(10, Metric::Cosine),
            preprocess: false,
            wasserstein_cap: DEFAULT_WASSERSTEIN_CAP,
        }
    }
}

/// Runs one baseline index over an ensemble.
pub fn baseline_index(
    ensemble: &ConfigurationEnsemble,
    index: BaselineIndex,
    opts: &BaselineOptions,
) -> Result<PairwiseIndexReport> {
    let prepared;
    let ensemble = if opts.preprocess {
        let configs = ensemble
            .configs()
            .iter()
            .map(|z| crate::embedding::preprocess_center_normalize(z).map(|p| p.matrix))
            .collect::<Result<Vec<EmbeddingMatrix>>>()?;
        prepared = ConfigurationEnsemble::new(configs)?;
        &prepared
    } else {
        ensemble
    };
    match index {
        BaselineIndex::AlignedCosine => aligned_cosine_index(ensemble),
        BaselineIndex::KnnJaccard => knn_jaccard_index(ensemble, &opts.neighbors),
        BaselineIndex::SecondOrderCosine => second_order_cosine_index(ensemble, &opts.neighbors),
        BaselineIndex::Hausdorff => hausdorff_index(ensemble),
        BaselineIndex::Wasserstein => wasserstein_index(ensemble, opts.wasserstein_cap),
    }
}
