use rayon::prelude::*;

use super::{unordered_pairs, BaselineIndex, PairScore, PairwiseIndexReport};
use crate::alignment::{procrustes_align, rotate_row};
use crate::embedding::{cosine, EmbeddingMatrix};
use crate::ensemble::ConfigurationEnsemble;
use crate::error::Result;

/// Aligns `zl` onto `zm` with orthogonal Procrustes, then averages the
/// per-node cosine of `z_i^l Q` with `z_i^m`. Returns the score and whether the
/// alignment was degenerate.
pub fn aligned_cosine_pair(zl: &EmbeddingMatrix, zm: &EmbeddingMatrix) -> Result<(f64, bool)> {
    let alignment = procrustes_align(zl, zm)?;
    let d = zl.cols();
    let per_node: Vec<f64> = (0..zl.rows())
        .into_par_iter()
        .map_init(
            || vec![0.0; d],
            |buf, i| {
                rotate_row(zl.row(i), &alignment.q, buf);
                cosine(buf, zm.row(i))
            },
        )
        .collect();
    Ok((super::mean(per_node.into_iter()), alignment.degenerate))
}

pub fn aligned_cosine_index(ensemble: &ConfigurationEnsemble) -> Result<PairwiseIndexReport> {
    ensemble.require_equal_dims()?;
    let mut degenerate = 0;
    let mut per_pair = Vec::new();
    for (l, m) in unordered_pairs(ensemble.len()) {
        let (score, deg) = aligned_cosine_pair(ensemble.get(l), ensemble.get(m))?;
        degenerate += usize::from(deg);
        per_pair.push(PairScore { l, m, score });
    }
    let mut report = PairwiseIndexReport::from_pairs(BaselineIndex::AlignedCosine, per_pair);
    report.degenerate_alignments = degenerate;
    Ok(report)
}
