//! Family-specific interval colorings.
//!
//! Every constructor here returns a coloring whose upper spectral edge over
//! all vertices is continuous, which is exactly what the composition engine
//! needs from the inner graph.

use std::collections::VecDeque;

use crate::coloring::EdgeColoring;
use crate::error::{invalid, Error, Result};
use crate::generators::{complete_bipartite, cycle};
use crate::graph::{classify, Edge, Graph};
use crate::matching::perfect_matching;
use crate::sequence::ColorSequence;

/// Proper `r`-coloring of an `r`-regular bipartite graph with colors
/// `base..base+r`, obtained by peeling off one perfect matching per color.
pub fn konig_delta_color(g: &Graph, base: i64) -> Result<EdgeColoring> {
    let class = classify(g);
    let Some((left, right)) = class.bipartition else {
        return Err(invalid(format!("{} is not bipartite", g.name())));
    };
    let Some(r) = class.regular_degree else {
        return Err(invalid(format!("{} is not regular", g.name())));
    };

    let mut local = vec![0usize; g.num_vertices()];
    for (i, &v) in left.iter().enumerate() {
        local[v] = i;
    }
    for (i, &v) in right.iter().enumerate() {
        local[v] = i;
    }
    let is_left = {
        let mut m = vec![false; g.num_vertices()];
        left.iter().for_each(|&v| m[v] = true);
        m
    };

    let mut colors: Vec<Option<i64>> = vec![None; g.num_edges()];
    for round in 0..r {
        // adj[l] lists (right local id) of uncolored edges; edge ids kept alongside.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left.len()];
        let mut edge_of: Vec<Vec<usize>> = vec![Vec::new(); left.len()];
        for (idx, &(u, v)) in g.edges().iter().enumerate() {
            if colors[idx].is_some() {
                continue;
            }
            let (l, rt) = if is_left[u] { (u, v) } else { (v, u) };
            adj[local[l]].push(local[rt]);
            edge_of[local[l]].push(idx);
        }
        let matching = perfect_matching(&adj, right.len()).ok_or_else(|| {
            Error::Precondition(format!("no perfect matching in round {round} of {}", g.name()))
        })?;
        for (l, &rt) in matching.iter().enumerate() {
            let pos = adj[l].iter().position(|&x| x == rt).expect("matched edge exists");
            colors[edge_of[l][pos]] = Some(base + round as i64);
        }
    }
    let colors = colors
        .into_iter()
        .map(|c| c.expect("regular graph is fully peeled"))
        .collect();
    EdgeColoring::new(g.clone(), colors)
}

/// The two diagonal color classes laid down for one non-final value of the
/// prescribed sequence. Together they form a perfect matching of `K_{n,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalPair {
    pub low_color: i64,
    pub low_edges: Vec<Edge>,
    pub high_color: i64,
    pub high_edges: Vec<Edge>,
}

fn check_prescribed(n: usize, seq: &ColorSequence) -> Result<()> {
    if n == 0 {
        return Err(invalid("K_{n,n} needs n >= 1"));
    }
    if seq.len() != n {
        return Err(invalid(format!("sequence {seq} has length {}, expected {n}", seq.len())));
    }
    if !seq.is_continuous() {
        return Err(invalid(format!("sequence {seq} is not continuous")));
    }
    if seq.min().unwrap_or(0) < 1 {
        return Err(invalid(format!("sequence {seq} must start at 1 or above")));
    }
    Ok(())
}

/// Partial coloring of `K_{n,n}` from the diagonal rules: for the `i`-th
/// distinct value `l_i` (all but the last) with prefix count `s_i`, edges
/// `u_p v_q` with `p + q = 1 + s_i` get `l_i` and those with
/// `p + q = n + 1 + s_i` get `l_i + n` (1-based `p`, `q`).
///
/// Vertex `u_p` is id `p - 1` and `v_q` is id `n + q - 1`.
pub fn prescribed_lse_diagonals(n: usize, seq: &ColorSequence) -> Result<Vec<DiagonalPair>> {
    check_prescribed(n, seq)?;
    let runs = seq.runs();
    let nn = n as i64;
    let diagonal = |sum: i64| -> Vec<Edge> {
        (1..=nn)
            .filter_map(|p| {
                let q = sum - p;
                (1..=nn).contains(&q).then(|| ((p - 1) as usize, (nn + q - 1) as usize))
            })
            .collect()
    };
    let mut prefix = 0i64;
    let mut out = Vec::with_capacity(runs.len().saturating_sub(1));
    for &(value, count) in &runs[..runs.len() - 1] {
        prefix += count as i64;
        out.push(DiagonalPair {
            low_color: value,
            low_edges: diagonal(1 + prefix),
            high_color: value + nn,
            high_edges: diagonal(nn + 1 + prefix),
        });
    }
    Ok(out)
}

/// Interval coloring of `K_{n,n}` whose lower spectral edge is `seq` on both
/// sides, with `S(u_i) = S(v_i) = [seq(i), seq(i) + n - 1]`.
///
/// The diagonals fix all but the last distinct value; the uncolored rest is
/// `(n - k + 1)`-regular and is König-colored starting at the largest value.
pub fn knn_prescribed_lse(n: usize, seq: &ColorSequence) -> Result<EdgeColoring> {
    let diagonals = prescribed_lse_diagonals(n, seq)?;
    let graph = complete_bipartite(n, n)?;
    let mut colors: Vec<Option<i64>> = vec![None; graph.num_edges()];
    for d in &diagonals {
        for (edges, color) in [(&d.low_edges, d.low_color), (&d.high_edges, d.high_color)] {
            for &(u, v) in edges {
                let idx = graph.edge_index(u, v).expect("K_{n,n} edge");
                debug_assert!(colors[idx].is_none());
                colors[idx] = Some(color);
            }
        }
    }

    let rest: Vec<(usize, Edge)> = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| colors[*i].is_none())
        .map(|(i, &e)| (i, e))
        .collect();
    let rest_graph = Graph::new("remainder", 2 * n, rest.iter().map(|&(_, e)| e).collect())?;
    let top = seq.max().expect("nonempty sequence");
    let filled = konig_delta_color(&rest_graph, top)?;
    for ((idx, _), &c) in rest.iter().zip(filled.colors()) {
        colors[*idx] = Some(c);
    }

    let colors = colors.into_iter().map(|c| c.expect("all edges colored")).collect();
    EdgeColoring::new(graph.with_name(format!("K_{{{n},{n}}}")), colors)
}

/// One leaf attachment in the tree construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStep {
    pub leaf: usize,
    pub attach: usize,
    /// Color before the final shift.
    pub color: i64,
}

/// Trace of the leaf-by-leaf tree construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeConstruction {
    pub tree: Graph,
    /// The first edge, colored `|E(T)|`.
    pub root_edge: Edge,
    pub steps: Vec<TreeStep>,
    /// Added to every raw color so the smallest becomes 1.
    pub shift: i64,
}

impl TreeConstruction {
    pub fn coloring(&self) -> EdgeColoring {
        let mut colors = vec![0; self.tree.num_edges()];
        let root = self.tree.edge_index(self.root_edge.0, self.root_edge.1).expect("root edge");
        colors[root] = self.tree.num_edges() as i64 + self.shift;
        for s in &self.steps {
            let idx = self.tree.edge_index(s.leaf, s.attach).expect("tree edge");
            colors[idx] = s.color + self.shift;
        }
        EdgeColoring::new(self.tree.clone(), colors).expect("one color per edge")
    }
}

/// Runs the tree construction, recording each step.
///
/// The first edge joins the lowest-id vertex to its lowest-id neighbor and
/// gets color `|E(T)|`. Remaining vertices are attached in breadth-first
/// order, each new edge `uw` taking one less than the current minimum at
/// `w`. Finally every color is shifted so the minimum is 1.
pub fn tree_construction(t: &Graph) -> Result<TreeConstruction> {
    let class = classify(t);
    if !class.is_tree || t.num_edges() == 0 {
        return Err(invalid(format!("{} is not a tree with at least one edge", t.name())));
    }
    let adj = t.neighbors();
    let m = t.num_edges() as i64;
    let root = 0;
    let first = adj[root][0];

    let mut lowest = vec![i64::MAX; t.num_vertices()];
    lowest[root] = m;
    lowest[first] = m;
    let mut seen = vec![false; t.num_vertices()];
    seen[root] = true;
    seen[first] = true;

    let mut steps = Vec::with_capacity(t.num_edges() - 1);
    let mut queue = VecDeque::from([root, first]);
    while let Some(w) = queue.pop_front() {
        for &u in &adj[w] {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            let color = lowest[w] - 1;
            lowest[w] = color;
            lowest[u] = color;
            steps.push(TreeStep {
                leaf: u,
                attach: w,
                color,
            });
            queue.push_back(u);
        }
    }
    let min_raw = steps.iter().map(|s| s.color).min().unwrap_or(m);
    Ok(TreeConstruction {
        tree: t.clone(),
        root_edge: (root, first),
        steps,
        shift: 1 - min_raw,
    })
}

/// Interval coloring of a tree with continuous upper spectral edge and
/// minimum color 1.
pub fn tree_continuous_use(t: &Graph) -> Result<EdgeColoring> {
    Ok(tree_construction(t)?.coloring())
}

/// `K_{m,n}` colored by `u_i v_j -> i + j - 1`: an interval `(m+n-1)`-coloring.
pub fn complete_bipartite_color(m: usize, n: usize) -> Result<EdgeColoring> {
    complete_bipartite_coloring_of(&complete_bipartite(m, n)?)
}

/// The `i + j - 1` coloring for any complete bipartite graph, ranking each
/// side by vertex id. The side containing vertex 0 plays `U`.
pub fn complete_bipartite_coloring_of(g: &Graph) -> Result<EdgeColoring> {
    let class = classify(g);
    let not_kmn = || invalid(format!("{} is not a complete bipartite graph", g.name()));
    let (a, b) = class.bipartition.ok_or_else(not_kmn)?;
    if a.is_empty() || b.is_empty() || g.num_edges() != a.len() * b.len() {
        return Err(not_kmn());
    }
    let mut rank = vec![0i64; g.num_vertices()];
    for side in [&a, &b] {
        for (i, &v) in side.iter().enumerate() {
            rank[v] = i as i64 + 1;
        }
    }
    Ok(EdgeColoring::from_fn(g.clone(), |&(u, v)| rank[u] + rank[v] - 1))
}

/// Interval `(n+1)`-coloring of `C_{2n}` (`n >= 2`) with upper spectral edge
/// `(2,2,3,3,...,n+1,n+1)`.
pub fn even_cycle_color(len: usize) -> Result<EdgeColoring> {
    if len % 2 == 1 {
        return Err(invalid(format!("C_{len} is an odd cycle")));
    }
    even_cycle_coloring_of(&cycle(len)?)
}

/// The mirrored cycle coloring for any graph that is an even cycle.
/// `v_1` is vertex 0 and the walk starts toward its lower-id neighbor.
pub fn even_cycle_coloring_of(g: &Graph) -> Result<EdgeColoring> {
    let len = g.num_vertices();
    let class = classify(g);
    if class.regular_degree != Some(2) || !class.is_connected {
        return Err(invalid(format!("{} is not a cycle", g.name())));
    }
    if len % 2 == 1 || len < 4 {
        return Err(invalid(format!("{} is not an even cycle of length >= 4", g.name())));
    }
    let adj = g.neighbors();
    let mut order = vec![0usize, adj[0][0]];
    while order.len() < len {
        let cur = order[order.len() - 1];
        let prev = order[order.len() - 2];
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        order.push(next);
    }
    let half = len / 2;
    // position[v] = 1-based index along the walk.
    let mut position = vec![0usize; len];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i + 1;
    }
    Ok(EdgeColoring::from_fn(g.clone(), |&(u, v)| {
        let (a, b) = (position[u].min(position[v]), position[u].max(position[v]));
        if a == 1 && b == len {
            1
        } else if b <= half + 1 {
            // v_a v_{a+1} on the first half
            a as i64 + 1
        } else {
            // v_{2n+1-i} v_{2n-i} with a = 2n - i
            (len - a) as i64 + 1
        }
    }))
}

/// Proper `Δ`-coloring with colors `1..=Δ` for regular graphs in a supported
/// family: hypercubes (by dimension), regular bipartite graphs (König peel)
/// and complete graphs of even order (round-robin).
pub fn regular_delta_color(h: &Graph) -> Result<EdgeColoring> {
    let class = classify(h);
    let Some(r) = class.regular_degree else {
        return Err(invalid(format!("{} is not regular", h.name())));
    };
    let nv = h.num_vertices();
    if r == 0 {
        return EdgeColoring::new(h.clone(), Vec::new());
    }
    let is_hypercube = nv.is_power_of_two()
        && nv.trailing_zeros() as usize == r
        && h.edges().iter().all(|&(u, v)| (u ^ v).is_power_of_two());
    if is_hypercube {
        return Ok(EdgeColoring::from_fn(h.clone(), |&(u, v)| {
            (u ^ v).trailing_zeros() as i64 + 1
        }));
    }
    if class.is_bipartite() {
        return konig_delta_color(h, 1);
    }
    if nv.is_multiple_of(2) && h.num_edges() == nv * (nv - 1) / 2 {
        return Ok(round_robin(h));
    }
    Err(Error::ClassOneUnavailable(h.name().to_string()))
}

/// Circle-method 1-factorization of `K_{2n}`: vertex `2n-1` is fixed and
/// round `r` pairs it with `r`.
fn round_robin(h: &Graph) -> EdgeColoring {
    let m = h.num_vertices() - 1;
    let mut colors = vec![0i64; h.num_edges()];
    for r in 0..m {
        let mut pairs = vec![(r, m)];
        for k in 1..=m / 2 {
            pairs.push(((r + k) % m, (r + m - k) % m));
        }
        for (a, b) in pairs {
            let idx = h.edge_index(a, b).expect("complete graph edge");
            colors[idx] = r as i64 + 1;
        }
    }
    EdgeColoring::new(h.clone(), colors).expect("one color per edge")
}
