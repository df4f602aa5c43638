//! Directed follower/leader topology.
//!
//! An edge `(i, j)` means user `i` follows user `j`: `j` is one of `i`'s
//! leaders and `i` is one of `j`'s followers. Both directions are stored in
//! CSR form so that left and right products with the newsfeed matrix are
//! plain gathers.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Immutable directed graph with dense `0..N` node indices.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    leader_offsets: Vec<usize>,
    leader_targets: Vec<u32>,
    follower_offsets: Vec<usize>,
    follower_targets: Vec<u32>,
    labels: Vec<u64>,
    index_of: HashMap<u64, usize>,
}

/// Counts of edges discarded while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: DirectedGraph,
    pub stats: BuildStats,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EdgeListOptions {
    /// Accept lines with more than two columns and ignore everything after
    /// the second (KONECT weight/timestamp columns).
    pub allow_extra_columns: bool,
}

impl DirectedGraph {
    /// Builds a graph from `(follower, leader)` index pairs. Labels default
    /// to the indices themselves.
    pub fn from_index_edges<I>(num_nodes: usize, edges: I) -> Result<(Self, BuildStats)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..num_nodes as u64).collect();
        Self::from_labeled_edges(labels, edges)
    }

    /// Builds a graph whose node `k` carries `labels[k]`.
    pub fn from_labeled_edges<I>(labels: Vec<u64>, edges: I) -> Result<(Self, BuildStats)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "{n} nodes exceed the supported maximum of {}",
                u32::MAX
            )));
        }
        let mut stats = BuildStats::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (src, dst) in edges {
            for idx in [src, dst] {
                if idx >= n {
                    return Err(Error::NodeOutOfRange {
                        index: idx,
                        num_nodes: n,
                    });
                }
            }
            if src == dst {
                stats.self_loops_dropped += 1;
                continue;
            }
            pairs.push((src as u32, dst as u32));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        stats.duplicates_dropped = before - pairs.len();

        let (leader_offsets, leader_targets) = compress(n, pairs.iter().copied());
        let mut transposed: Vec<(u32, u32)> = pairs.iter().map(|&(s, d)| (d, s)).collect();
        transposed.sort_unstable();
        let (follower_offsets, follower_targets) = compress(n, transposed.into_iter());

        let mut index_of = HashMap::with_capacity(n);
        for (idx, &label) in labels.iter().enumerate() {
            if index_of.insert(label, idx).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate node label {label}"
                )));
            }
        }

        Ok((
            DirectedGraph {
                leader_offsets,
                leader_targets,
                follower_offsets,
                follower_targets,
                labels,
                index_of,
            },
            stats,
        ))
    }

    pub fn num_nodes(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.leader_targets.len()
    }

    /// Nodes that `j` follows, sorted ascending.
    pub fn leaders(&self, j: usize) -> Result<&[u32]> {
        self.check(j)?;
        Ok(self.leaders_of(j))
    }

    /// Nodes that follow `i`, sorted ascending.
    pub fn followers(&self, i: usize) -> Result<&[u32]> {
        self.check(i)?;
        Ok(self.followers_of(i))
    }

    /// Unchecked-by-`Result` variant of [`leaders`](Self::leaders); panics on
    /// an out-of-range index.
    #[inline]
    pub fn leaders_of(&self, j: usize) -> &[u32] {
        &self.leader_targets[self.leader_offsets[j]..self.leader_offsets[j + 1]]
    }

    #[inline]
    pub fn followers_of(&self, i: usize) -> &[u32] {
        &self.follower_targets[self.follower_offsets[i]..self.follower_offsets[i + 1]]
    }

    #[inline]
    pub fn out_degree(&self, j: usize) -> usize {
        self.leader_offsets[j + 1] - self.leader_offsets[j]
    }

    #[inline]
    pub fn in_degree(&self, i: usize) -> usize {
        self.follower_offsets[i + 1] - self.follower_offsets[i]
    }

    /// True when every node follows at least one other node.
    pub fn is_leader_complete(&self) -> bool {
        (0..self.num_nodes()).all(|j| self.out_degree(j) > 0)
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> Result<u64> {
        self.check(idx)?;
        Ok(self.labels[idx])
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.index_of.get(&label).copied()
    }

    /// All edges as `(follower, leader)` index pairs in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_nodes())
            .flat_map(move |j| self.leaders_of(j).iter().map(move |&l| (j, l as usize)))
    }

    fn check(&self, idx: usize) -> Result<()> {
        if idx < self.num_nodes() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                index: idx,
                num_nodes: self.num_nodes(),
            })
        }
    }
}

fn compress(n: usize, sorted_pairs: impl Iterator<Item = (u32, u32)>) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = vec![0usize; n + 1];
    let mut targets = Vec::new();
    for (row, col) in sorted_pairs {
        offsets[row as usize + 1] += 1;
        targets.push(col);
    }
    for k in 0..n {
        offsets[k + 1] += offsets[k];
    }
    (offsets, targets)
}

/// Parses a whitespace-separated `src dst` edge list. Lines starting with `%`
/// or `#` are comments. Node labels are assigned dense indices in the order
/// they are first seen.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<ParsedGraph> {
    parse_edge_list_with(reader, EdgeListOptions::default())
}

pub fn parse_edge_list_with<R: BufRead>(reader: R, opts: EdgeListOptions) -> Result<ParsedGraph> {
    let mut labels = Vec::new();
    let mut index_of: HashMap<u64, usize> = HashMap::new();
    let mut edges = Vec::new();

    let mut intern = |label: u64| -> usize {
        *index_of.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() < 2 || (tokens.len() > 2 && !opts.allow_extra_columns) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 2 columns, found {}", tokens.len()),
            });
        }
        let parse_label = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node label {tok:?}"),
            })
        };
        let src = parse_label(tokens[0])?;
        let dst = parse_label(tokens[1])?;
        let src = intern(src);
        let dst = intern(dst);
        edges.push((src, dst));
    }

    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (graph, stats) = DirectedGraph::from_labeled_edges(labels, edges)?;
    if stats.self_loops_dropped > 0 {
        log::warn!("dropped {} self-loop(s)", stats.self_loops_dropped);
    }
    if stats.duplicates_dropped > 0 {
        log::warn!("dropped {} duplicate edge(s)", stats.duplicates_dropped);
    }
    Ok(ParsedGraph { graph, stats })
}

pub fn parse_edge_list_str(text: &str) -> Result<ParsedGraph> {
    parse_edge_list(text.as_bytes())
}

/// Writes the graph as a `src dst` edge list using the original labels.
pub fn write_edge_list<W: Write>(graph: &DirectedGraph, mut out: W) -> Result<()> {
    for (src, dst) in graph.edges() {
        writeln!(out, "{} {}", graph.labels[src], graph.labels[dst])?;
    }
    Ok(())
}
