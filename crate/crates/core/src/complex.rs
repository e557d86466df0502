//! Flag (clique) complexes, their links and full subcomplexes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::graph::{Graph, VertexSet};
use crate::{Error, Limits, Result};

/// A clique of the ambient graph, vertices sorted in canonical order.
/// The empty vertex list is the empty simplex of dimension −1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(Vec::new());

    /// Sorts and deduplicates the given vertices.
    pub fn new(mut vertices: Vec<usize>) -> Simplex {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self, graph: &Graph) -> Vec<String> {
        self.0.iter().map(|&v| graph.name(v).to_string()).collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "∅")
        } else {
            f.debug_set().entries(&self.0).finish()
        }
    }
}

/// The flag complex of the subgraph induced on `vertices`, with simplices
/// materialized up to `max_dim`.
#[derive(Clone)]
pub struct FlagComplex {
    graph: Arc<Graph>,
    vertices: VertexSet,
    max_dim: i64,
    /// `simplices[d]` lists the d-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
}

impl FlagComplex {
    /// Enumerates the cliques of size at most `max_dim + 1` inside `vertices`.
    pub fn build(graph: Arc<Graph>, vertices: VertexSet, max_dim: i64, limits: &Limits) -> Result<FlagComplex> {
        if max_dim < -1 {
            return Err(Error::InvalidArgument(format!("max_dim must be ≥ −1, got {max_dim}")));
        }
        if let Some(v) = vertices.iter().find(|&v| v >= graph.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        let mut total = 0usize;
        if max_dim >= 0 {
            let level: Vec<Simplex> = vertices.iter().map(|v| Simplex(vec![v])).collect();
            total += level.len();
            check_cap(total, limits)?;
            simplices.push(level);
        }
        for _ in 1..=max_dim.max(0) {
            let prev = simplices.last().expect("dimension 0 present");
            if prev.is_empty() {
                simplices.push(Vec::new());
                continue;
            }
            let mut next = Vec::new();
            for clique in prev {
                let mut common = vertices.clone();
                for &v in &clique.0 {
                    common.intersect_with(graph.neighbors(v));
                }
                let last = *clique.0.last().expect("nonempty clique");
                for w in common.iter().filter(|&w| w > last) {
                    let mut extended = clique.0.clone();
                    extended.push(w);
                    next.push(Simplex(extended));
                    total += 1;
                    check_cap(total, limits)?;
                }
            }
            simplices.push(next);
        }
        Ok(FlagComplex {
            graph,
            vertices,
            max_dim,
            simplices,
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn max_dim(&self) -> i64 {
        self.max_dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The d-simplices in lexicographic order. `d = −1` yields the empty
    /// simplex, which belongs to every complex.
    pub fn simplices(&self, d: i64) -> Result<&[Simplex]> {
        const EMPTY_LEVEL: &[Simplex] = &[Simplex::EMPTY];
        if d == -1 {
            return Ok(EMPTY_LEVEL);
        }
        if d < -1 || d > self.max_dim {
            return Err(Error::DimensionNotMaterialized {
                requested: d,
                available: self.max_dim,
            });
        }
        Ok(&self.simplices[d as usize])
    }

    /// Number of simplices per materialized dimension `0..=max_dim`.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Largest dimension with at least one simplex (−1 when empty).
    pub fn dimension(&self) -> i64 {
        self.simplices
            .iter()
            .rposition(|level| !level.is_empty())
            .map_or(-1, |d| d as i64)
    }

    /// True iff `sigma` is a simplex of this complex (ignores materialization).
    pub fn contains(&self, sigma: &Simplex) -> bool {
        let vs = sigma.vertices();
        vs.iter().all(|&v| self.vertices.contains(v))
            && vs
                .iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&w| self.graph.adjacent(u, w)))
    }

    /// Position of every d-simplex inside `simplices(d)`.
    pub(crate) fn index_of_level(&self, d: i64) -> Result<HashMap<&Simplex, usize>> {
        Ok(self
            .simplices(d)?
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect())
    }

    /// Rebuilds the same vertex set at another dimension bound.
    pub fn with_max_dim(&self, max_dim: i64, limits: &Limits) -> Result<FlagComplex> {
        FlagComplex::build(self.graph.clone(), self.vertices.clone(), max_dim, limits)
    }
}

impl fmt::Debug for FlagComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagComplex")
            .field("vertices", &self.vertices)
            .field("max_dim", &self.max_dim)
            .field("counts", &self.counts())
            .finish()
    }
}

impl PartialEq for FlagComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.max_dim == other.max_dim && self.simplices == other.simplices
    }
}

fn check_cap(total: usize, limits: &Limits) -> Result<()> {
    if total > limits.max_simplices {
        Err(Error::ResourceCap(format!(
            "flag complex exceeds {} simplices",
            limits.max_simplices
        )))
    } else {
        Ok(())
    }
}

/// The flag complex of `g` up to dimension `max_dim`.
pub fn flag_complex(g: &Arc<Graph>, max_dim: i64, limits: &Limits) -> Result<FlagComplex> {
    FlagComplex::build(g.clone(), g.all_vertices(), max_dim, limits)
}

/// Vertices adjacent to every vertex of `sigma` inside `within`.
pub fn common_neighbors(graph: &Graph, sigma: &Simplex, within: &VertexSet) -> VertexSet {
    let mut common = within.clone();
    for &v in sigma.vertices() {
        common.intersect_with(graph.neighbors(v));
    }
    common
}

/// `lk(K, σ)`: the flag complex on the common neighbours of σ inside K,
/// materialized so that `τ` is present iff `σ ∪ τ` is a materialized
/// simplex of K.
pub fn link(k: &FlagComplex, sigma: &Simplex, limits: &Limits) -> Result<FlagComplex> {
    if !k.contains(sigma) || sigma.dim() > k.max_dim {
        return Err(Error::NotASimplex(format!("{sigma:?}")));
    }
    if sigma.is_empty() {
        return Ok(k.clone());
    }
    let verts = common_neighbors(&k.graph, sigma, &k.vertices);
    FlagComplex::build(k.graph.clone(), verts, k.max_dim - sigma.dim() - 1, limits)
}

/// The full subcomplex of K spanned by `subset`.
pub fn full_subcomplex(k: &FlagComplex, subset: &VertexSet, limits: &Limits) -> Result<FlagComplex> {
    if let Some(v) = subset.iter().find(|&v| !k.vertices.contains(v)) {
        let name = if v < k.graph.vertex_count() {
            k.graph.name(v).to_string()
        } else {
            format!("#{v}")
        };
        return Err(Error::UnknownVertex(name));
    }
    FlagComplex::build(k.graph.clone(), subset.clone(), k.max_dim, limits)
}

/// Same as [`full_subcomplex`], with the subset given by vertex names.
pub fn full_subcomplex_by_name<S: AsRef<str>>(k: &FlagComplex, names: &[S], limits: &Limits) -> Result<FlagComplex> {
    let mut subset = VertexSet::new();
    for name in names {
        let v = k
            .graph
            .index_of(name.as_ref())
            .ok_or_else(|| Error::UnknownVertex(name.as_ref().to_string()))?;
        subset.insert(v);
    }
    full_subcomplex(k, &subset, limits)
}

/// Components of the 1-skeleton, each sorted, ordered by smallest vertex.
pub fn connected_components(k: &FlagComplex) -> Vec<Vec<usize>> {
    k.graph.components_within(&k.vertices)
}
