//! JSON ensemble manifests.
//!
//! ```json
//! {
//!   "graph_path": "graph.edges",
//!   "embedding_paths": ["seed0.gge", "seed1.gge"],
//!   "labels": ["seed0", "seed1"],
//!   "node_count": 2708
//! }
//! ```
//!
//! Relative paths resolve against the manifest's directory. Node ids in the
//! edge list are remapped in ascending order unless `node_count` (ids are row
//! indices) or `node_id_map` (explicit bijection file) is given.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::edge_list::{parse_edge_list, parse_id_map, LoadedGraph, NodeIds};
use super::read_with_digest;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleManifest {
    pub graph_path: PathBuf,
    pub embedding_paths: Vec<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_id_map: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_count: Option<usize>,
}

impl EnsembleManifest {
    pub fn validate(&self) -> Result<()> {
        if self.embedding_paths.len() < 2 {
            return Err(Error::TooFewConfigs(self.embedding_paths.len()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = self.embedding_paths.iter().find(|p| !seen.insert(*p)) {
            return Err(Error::InvalidInput(format!(
                "embedding path {} is listed twice",
                dup.display()
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.embedding_paths.len() {
                return Err(Error::InvalidInput(format!(
                    "{} labels for {} embedding files",
                    labels.len(),
                    self.embedding_paths.len()
                )));
            }
        }
        if self.node_count.is_some() && self.node_id_map.is_some() {
            return Err(Error::InvalidInput(
                "node_count and node_id_map are mutually exclusive".into(),
            ));
        }
        Ok(())
    }

    pub fn label(&self, l: usize) -> Option<&str> {
        self.labels.as_ref().map(|v| v[l].as_str())
    }
}

/// A validated manifest together with the directory its paths resolve against.
#[derive(Clone, Debug)]
pub struct ResolvedManifest {
    pub manifest: EnsembleManifest,
    pub base_dir: PathBuf,
}

impl ResolvedManifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let manifest: EnsembleManifest = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: format!("manifest {}: {e}", path.display()),
        })?;
        manifest.validate()?;
        Ok(Self {
            manifest,
            base_dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        })
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn embedding_path(&self, l: usize) -> PathBuf {
        self.resolve(&self.manifest.embedding_paths[l])
    }

    /// Loads the graph, honoring `node_count` / `node_id_map`. Returns the
    /// graph and the digests of the files read (graph first, then id map).
    pub fn load_graph(&self) -> Result<(LoadedGraph, Vec<(String, PathBuf, String)>)> {
        let graph_path = self.resolve(&self.manifest.graph_path);
        let (bytes, graph_digest) = read_with_digest(&graph_path)?;
        let text = String::from_utf8(bytes)
            .map_err(|_| Error::InvalidInput(format!("{} is not UTF-8 text", graph_path.display())))?;
        let mut digests = vec![(
            "graph".to_string(),
            self.manifest.graph_path.clone(),
            graph_digest,
        )];
        let loaded = if let Some(map_path) = &self.manifest.node_id_map {
            let (map_bytes, map_digest) = read_with_digest(&self.resolve(map_path))?;
            digests.push(("node_id_map".to_string(), map_path.clone(), map_digest));
            let map_text = String::from_utf8(map_bytes)
                .map_err(|_| Error::InvalidInput(format!("{} is not UTF-8 text", map_path.display())))?;
            let map = parse_id_map(&map_text)?;
            parse_edge_list(&text, NodeIds::Mapped(&map))?
        } else if let Some(n) = self.manifest.node_count {
            parse_edge_list(&text, NodeIds::Direct(n))?
        } else {
            parse_edge_list(&text, NodeIds::Remap)?
        };
        Ok((loaded, digests))
    }
}
