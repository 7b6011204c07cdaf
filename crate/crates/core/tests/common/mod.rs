//! Independent reference implementations used as test oracles. These follow
//! the textbook definitions directly (dense matrices, full sorts, set
//! arithmetic, permutation enumeration) and share no code with the library's
//! computation paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ggi_core::baselines::Metric;
use ggi_core::{EmbeddingMatrix, GraphTopology};

fn rows(z: &EmbeddingMatrix) -> Vec<Vec<f64>> {
    (0..z.rows()).map(|i| z.row(i).to_vec()).collect()
}

fn inner(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..a.len() {
        s += a[k] * b[k];
    }
    s
}

fn norm(a: &[f64]) -> f64 {
    inner(a, a).sqrt()
}

pub fn cos(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        inner(a, b) / (na * nb)
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..a.len() {
        s += (a[k] - b[k]).powi(2);
    }
    s.sqrt()
}

/// Sum of all entries of `A ∘ Z Zᵀ`, divided by `2|E|`, with `A` dense.
pub fn dense_edge_gram(z: &EmbeddingMatrix, g: &GraphTopology) -> f64 {
    let n = g.node_count();
    let mut adj = vec![vec![0.0; n]; n];
    for &(i, j) in g.edges() {
        adj[i as usize][j as usize] = 1.0;
        adj[j as usize][i as usize] = 1.0;
    }
    let r = rows(z);
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = inner(&r[i], &r[j]);
        }
    }
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += adj[i][j] * gram[i][j];
        }
    }
    total / (2.0 * g.edge_count() as f64)
}

/// kNN by fully sorting every other node: similarity descending (cosine) or
/// distance ascending (euclidean), then id ascending.
pub fn knn(z: &EmbeddingMatrix, k: usize, metric: Metric) -> Vec<Vec<usize>> {
    let r = rows(z);
    (0..r.len())
        .map(|i| {
            let mut others: Vec<(f64, usize)> = (0..r.len())
                .filter(|&j| j != i)
                .map(|j| match metric {
                    Metric::Cosine => (-cos(&r[i], &r[j]), j),
                    Metric::Euclidean => (euclid(&r[i], &r[j]), j),
                })
                .collect();
            others.sort_by(|a, b| a.partial_cmp(b).unwrap());
            others.into_iter().take(k).map(|(_, j)| j).collect()
        })
        .collect()
}

pub fn jaccard(a: &[Vec<usize>], b: &[Vec<usize>]) -> f64 {
    let mut total = 0.0;
    for (x, y) in a.iter().zip(b) {
        let sx: BTreeSet<usize> = x.iter().copied().collect();
        let sy: BTreeSet<usize> = y.iter().copied().collect();
        total += sx.intersection(&sy).count() as f64 / sx.union(&sy).count() as f64;
    }
    total / a.len() as f64
}

pub fn second_order(zl: &EmbeddingMatrix, zm: &EmbeddingMatrix, k: usize, metric: Metric) -> f64 {
    let (nl, nm) = (knn(zl, k, metric), knn(zm, k, metric));
    let (rl, rm) = (rows(zl), rows(zm));
    let mut total = 0.0;
    for i in 0..rl.len() {
        let u: BTreeSet<usize> = nl[i].iter().chain(&nm[i]).copied().collect();
        let sl: Vec<f64> = u.iter().map(|&j| cos(&rl[i], &rl[j])).collect();
        let sm: Vec<f64> = u.iter().map(|&j| cos(&rm[i], &rm[j])).collect();
        total += cos(&sl, &sm);
    }
    total / rl.len() as f64
}

pub fn hausdorff(a: &EmbeddingMatrix, b: &EmbeddingMatrix) -> f64 {
    let (ra, rb) = (rows(a), rows(b));
    let mut best = 0.0f64;
    for x in &ra {
        let mut nearest = f64::INFINITY;
        for y in &rb {
            nearest = nearest.min(euclid(x, y));
        }
        best = best.max(nearest);
    }
    for y in &rb {
        let mut nearest = f64::INFINITY;
        for x in &ra {
            nearest = nearest.min(euclid(x, y));
        }
        best = best.max(nearest);
    }
    best
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum over all `n!` bijections of the total squared displacement, square-rooted.
pub fn wasserstein(a: &EmbeddingMatrix, b: &EmbeddingMatrix) -> f64 {
    let (ra, rb) = (rows(a), rows(b));
    permutations(ra.len())
        .into_iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(i, &j)| euclid(&ra[i], &rb[j]).powi(2))
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
        .sqrt()
}
