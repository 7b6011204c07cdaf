//! Geometric stability indices for ensembles of node embeddings.
//!
//! The central quantity is the Graph Gram Index (GGI): each configuration's
//! embeddings are centered and row-normalized, summarized by the mean inner
//! product over graph edges, and the index is the standard deviation of those
//! summaries across configurations. It is invariant to node permutation,
//! orthogonal transformation, translation and the order of configurations.
//!
//! Five pairwise baselines are provided for comparison in [`baselines`], the
//! seeded transformations used to exercise the invariances live in
//! [`transforms`], and [`io`] / [`cli`] handle the on-disk formats and the
//! `ggi` command-line tool.

pub mod alignment;
pub mod baselines;
pub mod cli;
pub mod embedding;
pub mod ensemble;
pub mod error;
pub mod ggi;
pub mod graph;
pub mod io;
pub mod transforms;

pub use alignment::{procrustes_align, ProcrustesAlignment};
pub use embedding::{preprocess_center_normalize, EmbeddingMatrix, Preprocessed};
pub use ensemble::{validate_ensemble, ConfigurationEnsemble, ValidationSummary};
pub use error::{Error, Result};
pub use ggi::{edge_gram_sum, ggi_index, GgiAccumulator, GgiOptions, StabilityReport, StdConvention};
pub use graph::GraphTopology;
pub use nalgebra::DMatrix;
