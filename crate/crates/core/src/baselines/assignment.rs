//! Exact minimum-cost perfect matching on a dense square cost matrix.
//!
//! Shortest augmenting paths with row/column potentials (the O(n^3) Hungarian
//! method). Costs are arbitrary finite `f64`s.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    /// `row_to_col[i]` is the column matched to row `i`.
    pub row_to_col: Vec<usize>,
    /// Sum of the matched costs, accumulated in row order.
    pub cost: f64,
}

/// Solves the linear assignment problem for an `n x n` row-major cost matrix.
pub fn solve_assignment(n: usize, cost: &[f64]) -> Result<Assignment> {
    if cost.len() != n * n {
        return Err(Error::InvalidInput(format!(
            "cost matrix for n = {n} needs {} entries, got {}",
            n * n,
            cost.len()
        )));
    }
    if cost.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("cost matrix contains a non-finite entry".into()));
    }
    if n == 0 {
        return Ok(Assignment {
            row_to_col: Vec::new(),
            cost: 0.0,
        });
    }

    // Index 0 is a sentinel; rows and columns are 1-based below.
    let at = |i: usize, j: usize| cost[(i - 1) * n + (j - 1)];
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut min_v = vec![0.0f64; n + 1];
    let mut used = vec![false; n + 1];

    for row in 1..=n {
        col_owner[0] = row;
        let mut j0 = 0;
        min_v.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = at(i0, j) - u[i0] - v[j];
                if reduced < min_v[j] {
                    min_v[j] = reduced;
                    way[j] = j0;
                }
                if min_v[j] < delta {
                    delta = min_v[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_v[j] -= delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0; n];
    for j in 1..=n {
        row_to_col[col_owner[j] - 1] = j - 1;
    }
    let total = row_to_col
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i * n + j])
        .sum();
    Ok(Assignment {
        row_to_col,
        cost: total,
    })
}
