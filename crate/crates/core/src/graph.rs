//! Simple undirected graphs with a canonical edge order, plus the
//! lexicographic product `G[H]` and structural predicates.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// An unordered vertex pair stored as `(min, max)`.
pub type Edge = (usize, usize);

/// A simple undirected graph.
///
/// Edges are stored canonically: each pair has `u < v` and the list is sorted
/// lexicographically. Colorings are parallel to this list, so the order is
/// part of the on-disk contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    name: String,
    num_vertices: usize,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct RawGraph {
    #[serde(default)]
    name: String,
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = crate::Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.name, raw.num_vertices, raw.edges)
    }
}

impl Graph {
    /// Builds a graph from an arbitrary edge list, canonicalizing it.
    ///
    /// Loops, duplicate edges (in either orientation) and out-of-range ids are
    /// rejected.
    pub fn new(name: impl Into<String>, num_vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            if u >= num_vertices || v >= num_vertices {
                return Err(invalid(format!(
                    "edge ({u},{v}) out of range for {num_vertices} vertices"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Graph {
            name: name.into(),
            num_vertices,
            edges: canon,
        })
    }

    pub fn edgeless(num_vertices: usize) -> Self {
        Graph {
            name: format!("empty({num_vertices})"),
            num_vertices,
            edges: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Position of `{u, v}` in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Incidence lists: for each vertex, `(neighbor, edge index)` sorted by
    /// neighbor id.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((v, idx));
            inc[v].push((u, idx));
        }
        for list in &mut inc {
            list.sort_unstable();
        }
        inc
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        self.incidence()
            .into_iter()
            .map(|l| l.into_iter().map(|(w, _)| w).collect())
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Vertex labelling of `G[H]`: copy `i` of vertex `j` of `H` is `i * n + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositionIndex {
    outer: usize,
    inner: usize,
}

impl CompositionIndex {
    pub fn new(outer: usize, inner: usize) -> Self {
        CompositionIndex { outer, inner }
    }

    /// Order of `G`.
    pub fn outer(&self) -> usize {
        self.outer
    }

    /// Order of `H`.
    pub fn inner(&self) -> usize {
        self.inner
    }

    pub fn len(&self) -> usize {
        self.outer * self.inner
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat(&self, copy: usize, vertex: usize) -> usize {
        debug_assert!(copy < self.outer && vertex < self.inner);
        copy * self.inner + vertex
    }

    pub fn split(&self, flat: usize) -> (usize, usize) {
        (flat / self.inner, flat % self.inner)
    }
}

/// The lexicographic product `G[H]`.
pub fn compose(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = h.num_vertices();
    if n == 0 {
        return Err(invalid("inner graph H must have at least one vertex"));
    }
    let idx = CompositionIndex::new(g.num_vertices(), n);
    let mut edges = Vec::with_capacity(g.num_edges() * n * n + g.num_vertices() * h.num_edges());
    for &(a, b) in g.edges() {
        for p in 0..n {
            for q in 0..n {
                edges.push((idx.flat(a, p), idx.flat(b, q)));
            }
        }
    }
    for i in 0..g.num_vertices() {
        for &(p, q) in h.edges() {
            edges.push((idx.flat(i, p), idx.flat(i, q)));
        }
    }
    Graph::new(format!("{}[{}]", g.name(), h.name()), idx.len(), edges)
}

/// Structural facts used to pick a construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub is_connected: bool,
    pub is_tree: bool,
    /// The two sides, when bipartite. Side 0 holds the lowest id of every
    /// component.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    /// Common degree, when regular.
    pub regular_degree: Option<usize>,
    pub is_triangle_free: bool,
    pub max_degree: usize,
}

impl Classification {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree.is_some()
    }
}

pub fn classify(g: &Graph) -> Classification {
    let nv = g.num_vertices();
    let adj = g.neighbors();
    let deg = g.degrees();

    let mut side = vec![usize::MAX; nv];
    let mut bipartite = true;
    let mut components = 0;
    for s in 0..nv {
        if side[s] != usize::MAX {
            continue;
        }
        components += 1;
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if side[w] == usize::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    bipartite = false;
                }
            }
        }
    }
    let is_connected = components <= 1;
    let bipartition = bipartite.then(|| {
        let (a, b): (Vec<usize>, Vec<usize>) = (0..nv).partition(|&v| side[v] == 0);
        (a, b)
    });

    let regular_degree = match deg.first() {
        Some(&d) if deg.iter().all(|&x| x == d) => Some(d),
        None => Some(0),
        _ => None,
    };

    let is_triangle_free = bipartite || {
        let mut mark = vec![false; nv];
        !g.edges().iter().any(|&(u, v)| {
            adj[u].iter().for_each(|&w| mark[w] = true);
            let hit = adj[v].iter().any(|&w| mark[w]);
            adj[u].iter().for_each(|&w| mark[w] = false);
            hit
        })
    };

    Classification {
        is_connected,
        is_tree: nv >= 1 && is_connected && g.num_edges() + 1 == nv,
        bipartition,
        regular_degree,
        is_triangle_free,
        max_degree: deg.into_iter().max().unwrap_or(0),
    }
}
