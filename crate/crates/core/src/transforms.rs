//! Seeded generators for isometries, permutations, noise and synthetic graphs.
//!
//! All randomness comes from [`RNG_ALGORITHM`]: a ChaCha8 stream seeded with
//! `seed_from_u64`, with normals drawn by `rand_distr::StandardNormal`. The
//! same seed gives the same output on every platform.

use std::collections::HashSet;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::alignment::rotate_row;
use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::graph::GraphTopology;

pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 + rand_distr::StandardNormal";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `z -> z * t_matrix + translation`, applied to row vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    pub t_matrix: DMatrix<f64>,
    pub translation: Vec<f64>,
}

impl Isometry {
    pub fn identity(d: usize) -> Self {
        Self {
            t_matrix: DMatrix::identity(d, d),
            translation: vec![0.0; d],
        }
    }

    pub fn translation(t: Vec<f64>) -> Self {
        Self {
            t_matrix: DMatrix::identity(t.len(), t.len()),
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    /// The isometry equal to applying `self` and then `next`.
    pub fn then(&self, next: &Isometry) -> Isometry {
        let mut translation = vec![0.0; self.dim()];
        rotate_row(&self.translation, &next.t_matrix, &mut translation);
        translation
            .iter_mut()
            .zip(&next.translation)
            .for_each(|(a, b)| *a += b);
        Isometry {
            t_matrix: &self.t_matrix * &next.t_matrix,
            translation,
        }
    }
}

/// `rows x cols` matrix of i.i.d. standard normals.
pub fn random_gaussian_matrix(rows: usize, cols: usize, seed: u64) -> Result<EmbeddingMatrix> {
    let mut r = rng(seed);
    let data = (0..rows * cols).map(|_| r.sample(StandardNormal)).collect();
    EmbeddingMatrix::from_vec(rows, cols, data)
}

/// Haar-distributed orthogonal `d x d` matrix: QR of a seeded Gaussian matrix
/// with the signs of `R`'s diagonal folded into `Q`. Translation is zero.
pub fn random_orthogonal(d: usize, seed: u64) -> Isometry {
    assert!(d >= 1, "dimension must be positive");
    let mut r = rng(seed);
    let g = DMatrix::<f64>::from_fn(d, d, |_, _| r.sample(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let rm = qr.r();
    for c in 0..d {
        if rm[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    Isometry {
        t_matrix: q,
        translation: vec![0.0; d],
    }
}

/// Translation vector with i.i.d. normal entries of standard deviation `scale`.
pub fn random_translation(d: usize, scale: f64, seed: u64) -> Isometry {
    let mut r = rng(seed);
    Isometry::translation((0..d).map(|_| scale * r.sample::<f64, _>(StandardNormal)).collect())
}

pub fn apply_isometry(z: &EmbeddingMatrix, iso: &Isometry) -> Result<EmbeddingMatrix> {
    let d = z.cols();
    if iso.t_matrix.nrows() != d || iso.t_matrix.ncols() != d || iso.translation.len() != d {
        return Err(Error::shape(
            0,
            format!("isometry of dimension {} applied to {d}-dimensional embeddings", iso.dim()),
        ));
    }
    let mut data = vec![0.0; z.rows() * d];
    for (row, out) in z.row_iter().zip(data.chunks_exact_mut(d)) {
        rotate_row(row, &iso.t_matrix, out);
        out.iter_mut().zip(&iso.translation).for_each(|(o, t)| *o += t);
    }
    EmbeddingMatrix::from_vec(z.rows(), d, data)
}

/// A bijection on node ids. Applying it moves input row `i` to output row
/// `mapping[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePermutation {
    mapping: Vec<usize>,
}

impl NodePermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for (i, &t) in mapping.iter().enumerate() {
            if t >= n {
                return Err(Error::NotABijection(format!("{i} maps to {t}, outside 0..{n}")));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::NotABijection(format!("{t} is the image of more than one node")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    /// Uniformly random permutation (Fisher-Yates on the seeded stream).
    pub fn random(n: usize, seed: u64) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(&mut rng(seed));
        Self { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &t) in self.mapping.iter().enumerate() {
            inv[t] = i;
        }
        Self { mapping: inv }
    }
}

/// Relabels rows only: output row `sigma(i)` is input row `i`.
pub fn permute_rows(z: &EmbeddingMatrix, sigma: &NodePermutation) -> Result<EmbeddingMatrix> {
    if sigma.len() != z.rows() {
        return Err(Error::shape(
            0,
            format!("permutation of {} nodes applied to {} rows", sigma.len(), z.rows()),
        ));
    }
    let d = z.cols();
    let mut data = vec![0.0; z.rows() * d];
    for (i, row) in z.row_iter().enumerate() {
        let t = sigma.apply(i);
        data[t * d..(t + 1) * d].copy_from_slice(row);
    }
    EmbeddingMatrix::from_vec(z.rows(), d, data)
}

/// Relabels edges only: `{i, j}` becomes `{sigma(i), sigma(j)}`.
pub fn permute_graph(graph: &GraphTopology, sigma: &NodePermutation) -> Result<GraphTopology> {
    if sigma.len() != graph.node_count() {
        return Err(Error::InvalidInput(format!(
            "permutation of {} nodes applied to a graph of {} nodes",
            sigma.len(),
            graph.node_count()
        )));
    }
    let edges = graph
        .edges()
        .iter()
        .map(|&(i, j)| (sigma.apply(i as usize), sigma.apply(j as usize)));
    Ok(GraphTopology::from_edges(graph.node_count(), edges)?.0)
}

/// Relabels nodes consistently in both embeddings and graph.
pub fn apply_permutation(
    z: &EmbeddingMatrix,
    graph: &GraphTopology,
    sigma: &NodePermutation,
) -> Result<(EmbeddingMatrix, GraphTopology)> {
    Ok((permute_rows(z, sigma)?, permute_graph(graph, sigma)?))
}

/// Adds i.i.d. Gaussian noise with standard deviation `sigma_noise` to every entry.
pub fn perturb_gaussian(z: &EmbeddingMatrix, sigma_noise: f64, seed: u64) -> Result<EmbeddingMatrix> {
    if !(sigma_noise >= 0.0 && sigma_noise.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "noise level must be finite and non-negative, got {sigma_noise}"
        )));
    }
    if sigma_noise == 0.0 {
        return Ok(z.clone());
    }
    let mut r = rng(seed);
    let data = z
        .as_slice()
        .iter()
        .map(|v| v + sigma_noise * r.sample::<f64, _>(StandardNormal))
        .collect();
    EmbeddingMatrix::from_vec(z.rows(), z.cols(), data)
}

/// Uniform random simple graph with `round(nodes * avg_degree / 2)` edges,
/// capped at the complete graph.
pub fn random_graph(nodes: usize, avg_degree: f64, seed: u64) -> Result<GraphTopology> {
    if nodes < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 nodes, got {nodes}")));
    }
    if !(avg_degree > 0.0 && avg_degree.is_finite()) {
        return Err(Error::InvalidInput(format!("average degree must be positive, got {avg_degree}")));
    }
    let max_edges = nodes * (nodes - 1) / 2;
    let target = ((nodes as f64 * avg_degree / 2.0).round() as usize).clamp(1, max_edges);
    random_graph_with_edges(nodes, target, seed)
}

/// Uniform random simple graph with exactly `edges` edges.
pub fn random_graph_with_edges(nodes: usize, edges: usize, seed: u64) -> Result<GraphTopology> {
    let max_edges = nodes.saturating_mul(nodes.saturating_sub(1)) / 2;
    if edges > max_edges {
        return Err(Error::InvalidInput(format!(
            "{edges} edges requested but {nodes} nodes allow at most {max_edges}"
        )));
    }
    // Dense requests sample the complement instead.
    let complement = edges > max_edges / 2;
    let wanted = if complement { max_edges - edges } else { edges };
    let mut r = rng(seed);
    let mut chosen: HashSet<(usize, usize)> = HashSet::with_capacity(wanted);
    while chosen.len() < wanted {
        let i = r.random_range(0..nodes);
        let j = r.random_range(0..nodes);
        if i != j {
            chosen.insert((i.min(j), i.max(j)));
        }
    }
    let pairs: Vec<(usize, usize)> = if complement {
        (0..nodes)
            .flat_map(|i| (i + 1..nodes).map(move |j| (i, j)))
            .filter(|p| !chosen.contains(p))
            .collect()
    } else {
        chosen.into_iter().collect()
    };
    Ok(GraphTopology::from_edges(nodes, pairs)?.0)
}
