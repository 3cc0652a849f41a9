//! Standard graph families.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    CompleteMultipartite,
    Hypercube,
    Empty,
    Star,
    RandomTree,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::CompleteBipartite,
        Family::CompleteMultipartite,
        Family::Hypercube,
        Family::Empty,
        Family::Star,
        Family::RandomTree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::CompleteMultipartite => "complete_multipartite",
            Family::Hypercube => "hypercube",
            Family::Empty => "empty",
            Family::Star => "star",
            Family::RandomTree => "random_tree",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == norm)
            .ok_or_else(|| invalid(format!("unknown graph family '{s}'")))
    }
}

/// Builds a member of `family`. `seed` is only consulted by `random_tree`
/// (defaulting to 0).
pub fn generate(family: Family, params: &[usize], seed: Option<u64>) -> Result<Graph> {
    let one = |name: &str| -> Result<usize> {
        match params {
            [n] => Ok(*n),
            _ => Err(invalid(format!("{name} takes exactly one parameter"))),
        }
    };
    match family {
        Family::Path => path(one("path")?),
        Family::Cycle => cycle(one("cycle")?),
        Family::Complete => complete(one("complete")?),
        Family::CompleteBipartite => match params {
            [m, n] => complete_bipartite(*m, *n),
            _ => Err(invalid("complete_bipartite takes two parameters")),
        },
        Family::CompleteMultipartite => complete_multipartite(params),
        Family::Hypercube => hypercube(one("hypercube")?),
        Family::Empty => empty(one("empty")?),
        Family::Star => star(one("star")?),
        Family::RandomTree => random_tree(one("random_tree")?, seed.unwrap_or(0)),
    }
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("path needs at least one vertex"));
    }
    Graph::new(format!("P_{n}"), n, (1..n).map(|i| (i - 1, i)).collect())
}

/// `C_n` on vertices `0..n` with edges `(i, i+1)` and `(0, n-1)`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs at least 3 vertices"));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::new(format!("C_{n}"), n, edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("complete graph needs at least one vertex"));
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::new(format!("K_{n}"), n, edges)
}

/// `K_{m,n}` with parts `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(invalid("complete_bipartite parts must be nonempty"));
    }
    let edges = (0..m)
        .flat_map(|u| (0..n).map(move |v| (u, m + v)))
        .collect();
    Graph::new(format!("K_{{{m},{n}}}"), m + n, edges)
}

/// Complete multipartite graph; parts occupy consecutive id ranges.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(invalid("complete_multipartite needs nonempty parts"));
    }
    let mut part_of = Vec::new();
    for (k, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(k, size));
    }
    let nv = part_of.len();
    let mut edges = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    let label = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
    Graph::new(format!("K_{{{label}}}"), nv, edges)
}

/// `Q_d`: vertices are bit strings, adjacent when they differ in one bit.
pub fn hypercube(d: usize) -> Result<Graph> {
    if d == 0 || d > 20 {
        return Err(invalid("hypercube dimension must be in 1..=20"));
    }
    let nv = 1usize << d;
    let edges = (0..nv)
        .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::new(format!("Q_{d}"), nv, edges)
}

pub fn empty(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("empty graph needs at least one vertex"));
    }
    Ok(Graph::edgeless(n))
}

/// Star on `n` vertices: center 0 joined to `1..n`.
pub fn star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid("star needs at least 2 vertices"));
    }
    Graph::new(format!("star({n})"), n, (1..n).map(|v| (0, v)).collect())
}

/// Uniform labelled tree on `n` vertices, decoded from a seeded Prüfer
/// sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("random_tree needs at least one vertex"));
    }
    let name = format!("random_tree({n},{seed})");
    if n == 1 {
        return Graph::new(name, 1, Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Graph::new(name, n, prufer_decode(n, &code))
}

fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut remaining = vec![1usize; n];
    for &c in code {
        remaining[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer code always leaves a leaf");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges
}
