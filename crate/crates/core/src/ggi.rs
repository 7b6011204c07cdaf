//! The Graph Gram Index.
//!
//! Each configuration is summarized within its own embedding space by the
//! mean inner product over graph edges of its centered, row-normalized
//! embeddings. The index is the dispersion of those summaries across
//! configurations. No quantity ever compares embeddings from two different
//! configurations, so no alignment step is needed, and the `|V| x |V|` Gram
//! matrix is never formed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::{dot, EmbeddingMatrix};
use crate::ensemble::ConfigurationEnsemble;
use crate::error::{Error, Result};
use crate::graph::GraphTopology;

/// Edges per partial sum. Fixed so that the reduction order, and therefore
/// the result bits, do not depend on the number of worker threads.
pub const EDGE_CHUNK: usize = 8192;

/// Standard deviation convention used for the final dispersion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StdConvention {
    /// Divide by `N`.
    #[default]
    Population,
    /// Divide by `N - 1`.
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GgiOptions {
    /// Center and row-normalize each configuration before summarizing it.
    pub preprocess: bool,
    pub std: StdConvention,
}

impl Default for GgiOptions {
    fn default() -> Self {
        Self {
            preprocess: true,
            std: StdConvention::Population,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSummaryScore {
    pub config_index: usize,
    pub score: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GgiMetadata {
    pub preprocessed: bool,
    pub std_convention: StdConvention,
    pub node_count: usize,
    pub edge_count: usize,
    pub embedding_dims: Vec<usize>,
    /// Zero-after-centering rows per configuration (all zero when
    /// preprocessing is off).
    pub degenerate_rows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub index_name: String,
    pub index_value: f64,
    pub index_percent: f64,
    pub n_configs: usize,
    pub per_config: Vec<EdgeSummaryScore>,
    pub metadata: GgiMetadata,
}

impl StabilityReport {
    pub fn scores(&self) -> Vec<f64> {
        self.per_config.iter().map(|s| s.score).collect()
    }
}

/// Mean inner product over edges: `(1 / 2|E|) * sum_{A[i,j] = 1} <z_i, z_j>`.
///
/// Each unordered edge contributes its inner product once for each direction,
/// which is the same as summing it once and dividing by `|E|`.
/// `z` is used as given; callers wanting the index's preprocessing must apply
/// it first (see [`ggi_index`]).
pub fn edge_gram_sum(z: &EmbeddingMatrix, graph: &GraphTopology) -> Result<f64> {
    if z.rows() != graph.node_count() {
        return Err(Error::shape(
            0,
            format!("{} rows but the graph has {} nodes", z.rows(), graph.node_count()),
        ));
    }
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let partials: Vec<f64> = graph
        .edges()
        .par_chunks(EDGE_CHUNK)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&(i, j)| dot(z.row(i as usize), z.row(j as usize)))
                .sum::<f64>()
        })
        .collect();
    let total: f64 = partials.iter().sum();
    Ok(total / graph.edge_count() as f64)
}

/// Standard deviation of `values`.
///
/// Values are shifted by their minimum before the two-pass variance, which
/// makes the result independent of input order up to rounding and exactly
/// zero when all values are equal.
pub fn dispersion(values: &[f64], convention: StdConvention) -> f64 {
    let n = values.len();
    let denom = match convention {
        StdConvention::Population => n,
        StdConvention::Sample => n.saturating_sub(1),
    };
    if denom == 0 {
        return 0.0;
    }
    let shift = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = values.iter().map(|v| v - shift).sum::<f64>() / n as f64;
    let ss: f64 = values
        .iter()
        .map(|v| {
            let d = (v - shift) - mean;
            d * d
        })
        .sum();
    (ss / denom as f64).sqrt()
}

/// Scores one configuration, preprocessing a copy of it if requested.
fn score_config(
    z: &EmbeddingMatrix,
    graph: &GraphTopology,
    preprocess: bool,
) -> Result<(f64, usize)> {
    if preprocess {
        let mut owned = z.clone();
        let degenerate = owned.center_normalize_in_place()?;
        Ok((edge_gram_sum(&owned, graph)?, degenerate))
    } else {
        Ok((edge_gram_sum(z, graph)?, 0))
    }
}

/// Computes the Graph Gram Index of an in-memory ensemble.
///
/// Configurations are scored concurrently; each score is itself reduced in a
/// fixed order, so the report is reproducible bit-for-bit.
pub fn ggi_index(
    ensemble: &ConfigurationEnsemble,
    graph: &GraphTopology,
    opts: &GgiOptions,
) -> Result<StabilityReport> {
    if ensemble.len() < 2 {
        return Err(Error::TooFewConfigs(ensemble.len()));
    }
    let scored: Vec<(f64, usize)> = ensemble
        .configs()
        .par_iter()
        .enumerate()
        .map(|(l, z)| {
            score_config(z, graph, opts.preprocess).map_err(|e| relabel_config(e, l))
        })
        .collect::<Result<_>>()?;

    let mut acc = GgiAccumulator::new(graph, *opts);
    for ((score, degenerate), z) in scored.into_iter().zip(ensemble.configs()) {
        acc.record(score, degenerate, z.cols());
    }
    acc.finish()
}

fn relabel_config(err: Error, config: usize) -> Error {
    match err {
        Error::ShapeMismatch { detail, .. } => Error::ShapeMismatch { config, detail },
        other => other,
    }
}

/// Streaming form of [`ggi_index`]: configurations are pushed one at a time
/// and dropped after scoring, so peak memory is one embedding matrix plus the
/// edge list regardless of `N`.
#[derive(Debug)]
pub struct GgiAccumulator<'g> {
    graph: &'g GraphTopology,
    opts: GgiOptions,
    scores: Vec<f64>,
    dims: Vec<usize>,
    degenerate: Vec<usize>,
}

impl<'g> GgiAccumulator<'g> {
    pub fn new(graph: &'g GraphTopology, opts: GgiOptions) -> Self {
        Self {
            graph,
            opts,
            scores: Vec::new(),
            dims: Vec::new(),
            degenerate: Vec::new(),
        }
    }

    /// Scores `z` (preprocessing it in place when enabled) and returns its
    /// per-configuration score.
    pub fn push(&mut self, mut z: EmbeddingMatrix) -> Result<f64> {
        let l = self.scores.len();
        let degenerate = if self.opts.preprocess {
            z.center_normalize_in_place()?
        } else {
            0
        };
        let score = edge_gram_sum(&z, self.graph).map_err(|e| relabel_config(e, l))?;
        self.record(score, degenerate, z.cols());
        Ok(score)
    }

    fn record(&mut self, score: f64, degenerate: usize, dim: usize) {
        self.scores.push(score);
        self.degenerate.push(degenerate);
        self.dims.push(dim);
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn finish(self) -> Result<StabilityReport> {
        let n = self.scores.len();
        if n < 2 {
            return Err(Error::TooFewConfigs(n));
        }
        if let Some(l) = self.scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::Invariant(format!("configuration {l} produced a non-finite score")));
        }
        if self.opts.preprocess {
            if let Some(l) = self.scores.iter().position(|s| s.abs() > 1.0 + 1e-9) {
                return Err(Error::Invariant(format!(
                    "configuration {l} score {} lies outside [-1, 1] after preprocessing",
                    self.scores[l]
                )));
            }
        }
        let index_value = dispersion(&self.scores, self.opts.std);
        Ok(StabilityReport {
            index_name: "GGI".to_string(),
            index_value,
            index_percent: index_value * 100.0,
            n_configs: n,
            per_config: self
                .scores
                .iter()
                .enumerate()
                .map(|(config_index, &score)| EdgeSummaryScore { config_index, score })
                .collect(),
            metadata: GgiMetadata {
                preprocessed: self.opts.preprocess,
                std_convention: self.opts.std,
                node_count: self.graph.node_count(),
                edge_count: self.graph.edge_count(),
                embedding_dims: self.dims,
                degenerate_rows: self.degenerate,
            },
        })
    }
}
