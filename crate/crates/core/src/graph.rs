//! Immutable undirected simple graph in compressed sparse row form.
//!
//! Every vertex owns a strictly ascending slice of the shared neighbor array,
//! so membership queries are a binary search and the `i`-th neighbor is a
//! direct index. Vertices are dense `u32` ids assigned in order of first
//! appearance in the input; the source ids are kept in `original_ids`.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// An undirected edge in canonical orientation (`u < v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Canonicalizes `{a, b}`; `None` for a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    // First slot in `neighbors[offsets[u]..offsets[u + 1]]` holding a vertex > u.
    forward_start: Vec<usize>,
    // Number of canonical edges owned by vertices < u; length n + 1.
    edge_prefix: Vec<usize>,
    original_ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph from pairs of dense ids in `0..n`.
    ///
    /// Self-loops are dropped and parallel edges (in either direction) are
    /// collapsed. Vertices that end up without an edge still occupy an id, so
    /// callers that need the "no isolated vertices" guarantee should go
    /// through [`Graph::from_raw_edges`] or [`load_edge_list`].
    pub fn from_dense_edges(
        n: usize,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
        original_ids: Vec<u64>,
    ) -> Result<Self> {
        assert_eq!(original_ids.len(), n, "one original id per vertex");
        let pairs: Vec<(VertexId, VertexId)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        if pairs.is_empty() {
            return Err(Error::EmptyGraph);
        }

        let mut degree = vec![0usize; n + 1];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut cursor = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for d in &degree[..n] {
            cursor.push(acc);
            acc += d;
        }
        cursor.push(acc);
        let raw_offsets = cursor.clone();

        let mut raw = vec![0 as VertexId; acc];
        for &(a, b) in &pairs {
            raw[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            raw[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        drop(pairs);

        // Sort and deduplicate each list, compacting in place.
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut write = 0;
        for vertex in 0..n {
            let (start, end) = (raw_offsets[vertex], raw_offsets[vertex + 1]);
            raw[start..end].sort_unstable();
            let mut last = None;
            for read in start..end {
                let w = raw[read];
                if last != Some(w) {
                    raw[write] = w;
                    write += 1;
                    last = Some(w);
                }
            }
            offsets.push(write);
        }
        raw.truncate(write);
        raw.shrink_to_fit();

        Ok(Self::from_csr(offsets, raw, original_ids))
    }

    /// Builds a graph from arbitrary `u64` ids, remapping them densely in
    /// order of first appearance.
    pub fn from_raw_edges(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut remap = IdRemap::default();
        let dense: Vec<(VertexId, VertexId)> = pairs
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (remap.get(a), remap.get(b)))
            .collect();
        let n = remap.original.len();
        Self::from_dense_edges(n, dense, remap.original)
    }

    fn from_csr(offsets: Vec<usize>, neighbors: Vec<VertexId>, original_ids: Vec<u64>) -> Self {
        let n = offsets.len() - 1;
        let mut forward_start = Vec::with_capacity(n);
        let mut edge_prefix = Vec::with_capacity(n + 1);
        edge_prefix.push(0);
        for u in 0..n {
            let list = &neighbors[offsets[u]..offsets[u + 1]];
            let split = list.partition_point(|&w| w <= u as VertexId);
            forward_start.push(offsets[u] + split);
            let owned = list.len() - split;
            edge_prefix.push(edge_prefix[u] + owned);
        }
        Graph {
            offsets,
            neighbors,
            forward_start,
            edge_prefix,
            original_ids,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    pub fn original_id(&self, v: VertexId) -> u64 {
        self.original_ids[v as usize]
    }

    #[inline]
    pub fn degree(&self, u: VertexId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    #[inline]
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    /// The `i`-th smallest neighbor of `v`.
    #[inline]
    pub fn neighbor_at(&self, v: VertexId, i: usize) -> VertexId {
        self.neighbors(v)[i]
    }

    /// Neighbors of `u` with a larger id, i.e. the canonical edges owned by `u`.
    #[inline]
    pub fn forward_neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.neighbors[self.forward_start[u]..self.offsets[u + 1]]
    }

    /// Binary search in the shorter of the two neighbor lists.
    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Position of `e` in canonical edge order, if it is an edge.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        let forward = self.forward_neighbors(e.u);
        forward
            .binary_search(&e.v)
            .ok()
            .map(|pos| self.edge_prefix[e.u as usize] + pos)
    }

    /// Canonical edges ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertex_count() as VertexId)
            .flat_map(move |u| self.forward_neighbors(u).iter().map(move |&v| Edge { u, v }))
    }

    /// δ(e): the smaller endpoint degree.
    pub fn min_degree(&self, e: Edge) -> usize {
        self.degree(e.u).min(self.degree(e.v))
    }

    /// Splits `e` into `(hinge, other)` where the hinge has the lower degree.
    /// Equal degrees resolve to the smaller id, which is `e.u`.
    #[inline]
    pub fn low_degree_endpoint(&self, e: Edge) -> (VertexId, VertexId) {
        if self.degree(e.v) < self.degree(e.u) {
            (e.v, e.u)
        } else {
            (e.u, e.v)
        }
    }
}

#[derive(Default)]
struct IdRemap {
    index: HashMap<u64, VertexId>,
    original: Vec<u64>,
}

impl IdRemap {
    fn get(&mut self, id: u64) -> VertexId {
        let next = self.original.len();
        *self.index.entry(id).or_insert_with(|| {
            self.original.push(id);
            VertexId::try_from(next).expect("vertex count exceeds u32 range")
        })
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` are comments and blank lines are skipped. Every
/// other line must hold exactly two non-negative integers.
pub fn load_edge_list<R: BufRead>(mut source: R) -> Result<Graph> {
    let mut remap = IdRemap::default();
    let mut pairs = Vec::new();
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if source.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = std::str::from_utf8(&buf).map_err(|_| Error::Parse {
            line: line_no,
            message: "line is not valid UTF-8".into(),
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (parse_id(a, line_no)?, parse_id(b, line_no)?),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two vertex ids, got {line:?}"),
                })
            }
        };
        if a != b {
            pairs.push((remap.get(a), remap.get(b)));
        }
    }
    let n = remap.original.len();
    Graph::from_dense_edges(n, pairs, remap.original)
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex id {token:?}"),
    })
}

pub fn load_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::with_capacity(1 << 20, file))
}
