//! Undirected simple graphs stored as a sorted, deduplicated edge list.

use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected simple graph on nodes `0..node_count`.
///
/// Each unordered edge `{i, j}` is stored once as `(min, max)`; the list is
/// sorted. The implied adjacency matrix is symmetric with a zero diagonal, and
/// is never materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTopology {
    node_count: usize,
    edges: Vec<(u32, u32)>,
}

/// What [`GraphTopology::from_edges`] dropped while cleaning its input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeCleanup {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl GraphTopology {
    /// Builds a graph from arbitrary endpoint pairs. Reversed and repeated
    /// pairs collapse to one edge; self-loops are dropped. Both are counted.
    pub fn from_edges<I>(node_count: usize, pairs: I) -> Result<(Self, EdgeCleanup)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if node_count > u32::MAX as usize {
            return Err(Error::InvalidInput(format!(
                "node count {node_count} exceeds the supported maximum {}",
                u32::MAX
            )));
        }
        let mut cleanup = EdgeCleanup::default();
        let mut edges = Vec::new();
        for (i, j) in pairs {
            if i >= node_count || j >= node_count {
                return Err(Error::InvalidInput(format!(
                    "edge ({i}, {j}) has an endpoint outside 0..{node_count}"
                )));
            }
            if i == j {
                cleanup.self_loops_dropped += 1;
                continue;
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            edges.push((a as u32, b as u32));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        cleanup.duplicates_dropped = before - edges.len();
        Ok((Self { node_count, edges }, cleanup))
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of unordered edges, `|E|`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Unordered edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j || i >= self.node_count || j >= self.node_count {
            return false;
        }
        let key = if i < j { (i as u32, j as u32) } else { (j as u32, i as u32) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Bytes held by the edge list.
    pub fn byte_size(&self) -> usize {
        self.edges.len() * std::mem::size_of::<(u32, u32)>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedups_reversed_and_drops_self_loops() {
        let (g, c) = GraphTopology::from_edges(2, [(0, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(c.self_loops_dropped, 1);
        assert_eq!(c.duplicates_dropped, 1);
    }

    #[test]
    fn rejects_out_of_range_endpoints() {
        assert!(GraphTopology::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn has_edge_is_symmetric() {
        let (g, _) = GraphTopology::from_edges(4, [(3, 1), (0, 2)]).unwrap();
        assert!(g.has_edge(1, 3) && g.has_edge(3, 1));
        assert!(!g.has_edge(1, 1));
        assert!(!g.has_edge(0, 1));
    }
}
