//! Whitespace-separated edge lists.
//!
//! One edge per line as two non-negative integer ids; `#` starts a comment and
//! columns after the second are ignored. Reversed and repeated edges collapse
//! to one undirected edge, self-loops are dropped, and both are counted.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeCleanup, GraphTopology};

/// How file ids become row indices `0..|V|`.
#[derive(Clone, Copy, Debug)]
pub enum NodeIds<'a> {
    /// Distinct ids seen in the file, in ascending order, become `0, 1, ...`.
    Remap,
    /// Ids are row indices already; the graph has exactly this many nodes
    /// (some may be isolated).
    Direct(usize),
    /// Ids are translated through an explicit bijection.
    Mapped(&'a IdMap),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoadedGraph {
    #[serde(skip)]
    pub graph: GraphTopology,
    /// `original_ids[row]` is the id used for that node in the file.
    #[serde(skip)]
    pub original_ids: Vec<u64>,
    pub node_count: usize,
    pub edge_count: usize,
    #[serde(flatten)]
    pub cleanup: EdgeCleanup,
}

/// A bijection from file ids onto `0..n`, read from a two-column file
/// (`original_id row_index` per line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    to_row: HashMap<u64, usize>,
    by_row: Vec<u64>,
}

impl IdMap {
    pub fn len(&self) -> usize {
        self.by_row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_row.is_empty()
    }

    pub fn row_of(&self, id: u64) -> Option<usize> {
        self.to_row.get(&id).copied()
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let content = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        (!fields.is_empty()).then_some((idx + 1, fields))
    })
}

fn parse_id(field: &str, line: usize) -> Result<u64> {
    field.parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("{field:?} is not a non-negative integer node id"),
    })
}

fn parse_pairs(text: &str) -> Result<Vec<(u64, u64, usize)>> {
    data_lines(text)
        .map(|(line, fields)| {
            if fields.len() < 2 {
                return Err(Error::Parse {
                    line,
                    msg: "expected two node ids".into(),
                });
            }
            Ok((parse_id(fields[0], line)?, parse_id(fields[1], line)?, line))
        })
        .collect()
}

pub fn parse_id_map(text: &str) -> Result<IdMap> {
    let mut entries = Vec::new();
    for (line, fields) in data_lines(text) {
        if fields.len() < 2 {
            return Err(Error::Parse {
                line,
                msg: "expected `original_id row_index`".into(),
            });
        }
        let id = parse_id(fields[0], line)?;
        let row = fields[1].parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("{:?} is not a row index", fields[1]),
        })?;
        entries.push((id, row));
    }
    let n = entries.len();
    let mut by_row: Vec<Option<u64>> = vec![None; n];
    let mut to_row = HashMap::with_capacity(n);
    for (id, row) in entries {
        if row >= n {
            return Err(Error::NotABijection(format!(
                "id {id} maps to row {row}, outside 0..{n}"
            )));
        }
        if let Some(prev) = by_row[row].replace(id) {
            return Err(Error::NotABijection(format!(
                "row {row} is the target of ids {prev} and {id}"
            )));
        }
        if to_row.insert(id, row).is_some() {
            return Err(Error::NotABijection(format!("id {id} is mapped more than once")));
        }
    }
    Ok(IdMap {
        to_row,
        by_row: by_row.into_iter().map(|r| r.expect("every row filled")).collect(),
    })
}

pub fn parse_edge_list(text: &str, ids: NodeIds<'_>) -> Result<LoadedGraph> {
    let pairs = parse_pairs(text)?;
    let (node_count, original_ids, rows): (usize, Vec<u64>, Vec<(usize, usize)>) = match ids {
        NodeIds::Remap => {
            let distinct: BTreeSet<u64> = pairs.iter().flat_map(|&(a, b, _)| [a, b]).collect();
            let original: Vec<u64> = distinct.into_iter().collect();
            let index: HashMap<u64, usize> =
                original.iter().enumerate().map(|(row, &id)| (id, row)).collect();
            let rows = pairs.iter().map(|&(a, b, _)| (index[&a], index[&b])).collect();
            (original.len(), original, rows)
        }
        NodeIds::Direct(n) => {
            let rows = pairs
                .iter()
                .map(|&(a, b, line)| {
                    let bad = [a, b].into_iter().find(|&v| v >= n as u64);
                    match bad {
                        Some(v) => Err(Error::Parse {
                            line,
                            msg: format!("node id {v} is outside 0..{n}"),
                        }),
                        None => Ok((a as usize, b as usize)),
                    }
                })
                .collect::<Result<_>>()?;
            (n, (0..n as u64).collect(), rows)
        }
        NodeIds::Mapped(map) => {
            let rows = pairs
                .iter()
                .map(|&(a, b, line)| {
                    let lookup = |v: u64| {
                        map.row_of(v).ok_or_else(|| Error::Parse {
                            line,
                            msg: format!("node id {v} is missing from the id map"),
                        })
                    };
                    Ok((lookup(a)?, lookup(b)?))
                })
                .collect::<Result<_>>()?;
            (map.len(), map.by_row.clone(), rows)
        }
    };
    let (graph, cleanup) = GraphTopology::from_edges(node_count, rows)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(LoadedGraph {
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        graph,
        original_ids,
        cleanup,
    })
}

/// Loads an edge list, remapping ids to `0..|V|` in ascending id order.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, NodeIds::Remap)
}
