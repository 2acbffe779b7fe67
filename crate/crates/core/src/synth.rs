//! Synthetic graph generators for tests and benchmarks.

use crate::error::Result;
use crate::graph::Graph;
use crate::rng::RandomSource;

/// G(n, q): every vertex pair independently with probability `q`.
/// Vertices that end up isolated are not part of the returned graph.
pub fn erdos_renyi_edges(n: u64, q: f64, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = RandomSource::new(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.uniform_real() < q {
                edges.push((a, b));
            }
        }
    }
    edges
}

pub fn erdos_renyi(n: u64, q: f64, seed: u64) -> Result<Graph> {
    Graph::from_raw_edges(erdos_renyi_edges(n, q, seed))
}

/// Preferential attachment: a clique on `per_vertex + 1` seed vertices,
/// then each new vertex links to `per_vertex` distinct existing vertices
/// chosen in proportion to degree. Produces a power-law degree tail with
/// exactly `C(per_vertex + 1, 2) + (n − per_vertex − 1)·per_vertex` edges.
pub fn preferential_attachment_edges(n: u64, per_vertex: usize, seed: u64) -> Vec<(u64, u64)> {
    assert!(per_vertex >= 1 && n > per_vertex as u64);
    let mut rng = RandomSource::new(seed);
    let core = per_vertex as u64 + 1;
    let mut edges = Vec::with_capacity((n as usize) * per_vertex);
    // Each edge contributes both endpoints, so a uniform draw from this list
    // is a degree-proportional vertex draw.
    let mut endpoints: Vec<u64> = Vec::with_capacity(2 * (n as usize) * per_vertex);
    for a in 0..core {
        for b in a + 1..core {
            edges.push((a, b));
            endpoints.extend([a, b]);
        }
    }
    let mut targets = Vec::with_capacity(per_vertex);
    for v in core..n {
        targets.clear();
        while targets.len() < per_vertex {
            let t = endpoints[rng.uniform_index(endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((v, t));
            endpoints.extend([v, t]);
        }
    }
    edges
}

/// Renders pairs as a whitespace-separated edge list.
pub fn edge_list_text(edges: &[(u64, u64)]) -> String {
    use std::fmt::Write;
    let mut out = String::with_capacity(edges.len() * 16);
    for (a, b) in edges {
        writeln!(out, "{a} {b}").expect("writing to a String");
    }
    out
}
