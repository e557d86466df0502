//! Named graph families used as regression targets.

use crate::graph::Graph;

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// The complete graph `K_n` on `v0 … v(n-1)`.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_index_edges(numbered(n), edges).expect("valid")
}

/// The path `v0 − v1 − … − v(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_index_edges(numbered(n), (1..n).map(|v| (v - 1, v))).expect("valid")
}

/// The cycle `C_n` (n ≥ 3).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least three vertices");
    Graph::from_index_edges(numbered(n), (0..n).map(|v| (v, (v + 1) % n))).expect("valid")
}

/// The graph with no edges on `n` vertices.
pub fn discrete(n: usize) -> Graph {
    Graph::from_index_edges(numbered(n), []).expect("valid")
}

/// `K_{2,…,2}` with `m` parts, vertices `x1, y1, …, xm, ym` in that order.
/// Its Bestvina-Brady group is the Bieri-Stallings group `G_m`, and its
/// RAAG is the product of `m` free groups of rank two.
pub fn bieri_stallings(m: usize) -> Graph {
    let names = (1..=m).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect();
    let edges = (0..2 * m).flat_map(|u| (u + 1..2 * m).filter(move |&v| u / 2 != v / 2).map(move |v| (u, v)));
    Graph::from_index_edges(names, edges).expect("valid")
}

/// The labelled graph on `n` vertices whose edge set is encoded by the bits
/// of `mask`, enumerating pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn from_edge_mask(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    Graph::from_index_edges(numbered(n), edges).expect("valid")
}

/// Every labelled graph on `n ≤ 8` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "labelled enumeration is limited to 8 vertices");
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |mask| from_edge_mask(n, mask))
}

/// Every connected labelled graph on `n ≤ 8` vertices.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    all_graphs(n).filter(Graph::is_connected)
}
