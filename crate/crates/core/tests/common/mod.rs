#![allow(dead_code)]

use trisample::{Graph, VertexId};

pub fn complete(n: u64) -> Graph {
    Graph::from_raw_edges((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
}

pub fn star(leaves: u64) -> Graph {
    Graph::from_raw_edges((1..=leaves).map(|l| (0, l))).unwrap()
}

pub fn path(len: u64) -> Graph {
    Graph::from_raw_edges((0..len).map(|i| (i, i + 1))).unwrap()
}

/// 11 vertices labelled 1..=11, 16 edges, holding exactly the triangles
/// {1,2,6}, {1,2,7}, {1,3,4}, {1,7,8}, {2,5,6}. Degrees: d1 = 9, d2 = 4,
/// d4 = d5 = d6 = d7 = 3, d3 = d8 = 2, and 9, 10, 11 are leaves of 1, giving
/// 56 wedges.
pub const EXAMPLE_EDGES: [(u64, u64); 16] = [
    (1, 2),
    (1, 6),
    (2, 6),
    (1, 7),
    (2, 7),
    (1, 3),
    (1, 4),
    (3, 4),
    (1, 8),
    (7, 8),
    (2, 5),
    (5, 6),
    (5, 4),
    (1, 11),
    (1, 9),
    (1, 10),
];

pub struct Labelled {
    pub graph: Graph,
}

impl Labelled {
    pub fn example() -> Self {
        Labelled {
            graph: Graph::from_raw_edges(EXAMPLE_EDGES).unwrap(),
        }
    }

    /// Dense id of the vertex labelled `label`.
    pub fn id(&self, label: u64) -> VertexId {
        self.graph
            .original_ids()
            .iter()
            .position(|&x| x == label)
            .expect("label present") as VertexId
    }
}
