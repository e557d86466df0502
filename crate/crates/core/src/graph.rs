//! Finite simple graphs with a canonical vertex order.
//!
//! Vertices are addressed by their position in the declaration order; that
//! order is the tie-break order used by every other module (simplex
//! orientation, dead-simplex enumeration, witness selection, serialization).

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// A set of vertex indices backed by a bitset.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { words: Vec::new() }
    }

    /// The set `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        let mut set = VertexSet {
            words: vec![u64::MAX; n / 64],
        };
        if !n.is_multiple_of(64) {
            set.words.push((1u64 << (n % 64)) - 1);
        }
        set
    }

    pub fn insert(&mut self, v: usize) {
        let word = v / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if let Some(w) = self.words.get_mut(v / 64) {
            *w &= !(1 << (v % 64));
        }
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        VertexSet { words }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .enumerate()
            .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        VertexSet { words }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Deserialize, Serialize)]
struct GraphDocument {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

/// A finite simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    neighbors: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from vertex names and edges given by name, validating
    /// the same conditions as [`parse_graph`].
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        let mut names = Vec::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref();
            if v.is_empty() {
                return Err(GraphError::EmptyVertexId);
            }
            if index.insert(v.to_string(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
            names.push(v.to_string());
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
        };
        let mut seen = HashSet::new();
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
            pairs.push(key);
        }
        Ok(Self::assemble(names, index, pairs))
    }

    /// Builds a graph whose vertex `i` is called `names[i]`, from index pairs.
    /// Duplicate pairs are merged; self-loops are rejected.
    pub fn from_index_edges(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(GraphError::EmptyVertexId);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= names.len() || v >= names.len() {
                return Err(GraphError::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(GraphError::SelfLoop(names[u].clone()));
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::assemble(names, index, pairs))
    }

    fn assemble(names: Vec<String>, index: HashMap<String, usize>, mut edges: Vec<(usize, usize)>) -> Graph {
        let mut neighbors = vec![VertexSet::new(); names.len()];
        for &(u, v) in &edges {
            neighbors[u].insert(v);
            neighbors[v].insert(u);
        }
        edges.sort_unstable();
        Graph {
            names,
            index,
            neighbors,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.neighbors[v]
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Connected components of the subgraph induced on `subset`, each sorted,
    /// ordered by smallest member.
    pub fn components_within(&self, subset: &VertexSet) -> Vec<Vec<usize>> {
        let mut unseen = subset.clone();
        let mut components = Vec::new();
        while let Some(start) = unseen.first() {
            unseen.remove(start);
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let next = self.neighbors[v].intersection(&unseen);
                for w in next.iter() {
                    unseen.remove(w);
                    component.push(w);
                    stack.push(w);
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// True iff the subgraph induced on `subset` is nonempty and connected.
    pub fn is_connected_within(&self, subset: &VertexSet) -> bool {
        let Some(start) = subset.first() else {
            return false;
        };
        let mut reached = VertexSet::new();
        reached.insert(start);
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            let next = self.neighbors[v].intersection(subset).difference(&reached);
            for w in next.iter() {
                reached.insert(w);
                count += 1;
                stack.push(w);
            }
        }
        count == subset.len()
    }

    /// Nonempty and connected.
    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&self.all_vertices())
    }

    /// The subgraph induced on `subset`, keeping the canonical order.
    pub fn induced_subgraph(&self, subset: &VertexSet) -> Graph {
        let keep = subset.to_vec();
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            position[v] = i;
        }
        let names: Vec<String> = keep.iter().map(|&v| self.names[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| subset.contains(u) && subset.contains(v))
            .map(|&(u, v)| (position[u], position[v]));
        Graph::from_index_edges(names, edges).expect("induced subgraph of a valid graph")
    }

    /// The graph join: disjoint union plus every edge between the two parts.
    /// Vertices of `self` come first. Names must be disjoint.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let offset = self.vertex_count();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut edges: Vec<(usize, usize)> = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        for u in 0..offset {
            for v in 0..other.vertex_count() {
                edges.push((u, v + offset));
            }
        }
        Graph::from_index_edges(names, edges)
    }

    /// Serializes as a graph document.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = GraphDocument {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.names[u].clone(), self.names[v].clone()))
                .collect(),
        };
        serde_json::to_value(doc).expect("graph document serializes")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|&(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// Parses a graph document `{"vertices": [...], "edges": [[u, v], ...]}`.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
    Graph::new(&doc.vertices, &doc.edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_graph(r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(g.adjacent(1, 0));
        assert!(!g.adjacent(0, 2));
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_graph(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop("a".into()));
    }

    #[test]
    fn rejects_duplicate_edge_in_either_orientation() {
        let err = parse_graph(r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge("b".into(), "a".into()));
    }

    #[test]
    fn rejects_duplicate_and_unknown_vertices() {
        assert_eq!(
            parse_graph(r#"{"vertices":["a","a"],"edges":[]}"#).unwrap_err(),
            GraphError::DuplicateVertex("a".into())
        );
        assert_eq!(
            parse_graph(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).unwrap_err(),
            GraphError::UnknownVertex("z".into())
        );
        assert_eq!(
            parse_graph(r#"{"vertices":[""],"edges":[]}"#).unwrap_err(),
            GraphError::EmptyVertexId
        );
        assert!(matches!(parse_graph("[1,2]"), Err(GraphError::Malformed(_))));
    }

    #[test]
    fn vertex_ids_are_case_sensitive() {
        let g = parse_graph(r#"{"vertices":["a","A"],"edges":[["a","A"]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn vertex_set_operations() {
        let a: VertexSet = [1, 3, 70].into_iter().collect();
        let b: VertexSet = [3, 70, 71].into_iter().collect();
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 70]);
        assert_eq!(a.difference(&b).to_vec(), vec![1]);
        assert_eq!(a.len(), 3);
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(VertexSet::full(65).len(), 65);
        assert!(VertexSet::full(0).is_empty());
    }

    #[test]
    fn components_and_join() {
        let g = parse_graph(r#"{"vertices":["a","b","c","d"],"edges":[["a","c"]]}"#).unwrap();
        assert_eq!(g.components_within(&g.all_vertices()), vec![vec![0, 2], vec![1], vec![3]]);
        assert!(!g.is_connected());
        let h = parse_graph(r#"{"vertices":["x"],"edges":[]}"#).unwrap();
        let j = g.join(&h).unwrap();
        assert!(j.is_connected());
        assert_eq!(j.edge_count(), 1 + 4);
    }
}
