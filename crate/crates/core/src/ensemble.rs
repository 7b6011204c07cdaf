use serde::Serialize;

use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::graph::GraphTopology;

/// An ordered collection of at least two configurations' embeddings over the
/// same node set. Embedding dimensions may differ between members.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigurationEnsemble {
    configs: Vec<EmbeddingMatrix>,
}

impl ConfigurationEnsemble {
    pub fn new(configs: Vec<EmbeddingMatrix>) -> Result<Self> {
        if configs.len() < 2 {
            return Err(Error::TooFewConfigs(configs.len()));
        }
        let rows = configs[0].rows();
        if let Some((idx, z)) = configs.iter().enumerate().find(|(_, z)| z.rows() != rows) {
            return Err(Error::shape(
                idx,
                format!("{} rows, configuration 0 has {rows}", z.rows()),
            ));
        }
        Ok(Self { configs })
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.configs[0].rows()
    }

    pub fn configs(&self) -> &[EmbeddingMatrix] {
        &self.configs
    }

    pub fn get(&self, l: usize) -> &EmbeddingMatrix {
        &self.configs[l]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.configs.iter().map(EmbeddingMatrix::cols).collect()
    }

    pub fn into_configs(self) -> Vec<EmbeddingMatrix> {
        self.configs
    }

    /// Fails with `ShapeMismatch` on the first member whose dimension differs
    /// from configuration 0.
    pub(crate) fn require_equal_dims(&self) -> Result<usize> {
        let d = self.configs[0].cols();
        match self.configs.iter().position(|z| z.cols() != d) {
            Some(idx) => Err(Error::shape(
                idx,
                format!(
                    "dimension {} differs from configuration 0 ({d}); this index compares embeddings across configurations",
                    self.configs[idx].cols()
                ),
            )),
            None => Ok(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationSummary {
    pub n_configs: usize,
    pub node_count: usize,
    pub edge_count: usize,
    pub dims: Vec<usize>,
}

/// Checks that every configuration has one row per graph node.
pub fn validate_ensemble(
    ensemble: &ConfigurationEnsemble,
    graph: &GraphTopology,
) -> Result<ValidationSummary> {
    for (idx, z) in ensemble.configs().iter().enumerate() {
        if z.rows() != graph.node_count() {
            return Err(Error::shape(
                idx,
                format!("{} rows but the graph has {} nodes", z.rows(), graph.node_count()),
            ));
        }
    }
    Ok(ValidationSummary {
        n_configs: ensemble.len(),
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        dims: ensemble.dims(),
    })
}
