//! Interval colorings of lexicographic products `G[H]`.
//!
//! Given an interval coloring of `G` and an interval coloring of `H` whose
//! upper spectral edge `L` is continuous, every copy of `H` is colored by
//! shifting `H`'s colors into the block of its outer vertex, and every bundle
//! of cross edges between two adjacent copies is colored by a shifted copy of
//! a `K_{n,n}` coloring with lower spectral edge `L ⊕ 1`. The result is an
//! interval `(t·n + max L)`-coloring.

use std::fmt;
use std::str::FromStr;

use crate::coloring::{spectra, upper_spectral_edge_all, verify_interval, EdgeColoring, SpectrumTable};
use crate::construct::{
    complete_bipartite_coloring_of, even_cycle_coloring_of, knn_prescribed_lse, regular_delta_color,
    tree_continuous_use,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{classify, compose, CompositionIndex, Graph};
use crate::sequence::ColorSequence;

/// Everything the product coloring is computed from.
#[derive(Debug, Clone)]
pub struct CompositionPlan {
    /// Coloring of `G`, relabelled to start at 1.
    pub outer: EdgeColoring,
    /// Coloring of `H`, relabelled to start at 1 (empty when `H` is edgeless).
    pub inner: EdgeColoring,
    /// Number of colors of the outer coloring.
    pub t: i64,
    /// Upper spectral edge of `H`; all zeros when `H` is edgeless.
    pub upper_edge: ColorSequence,
    /// `order[j]` is the vertex of `H` whose spectrum maximum is `L(j)`;
    /// ties go to the lower id.
    pub order: Vec<usize>,
    /// Inverse of `order`.
    pub position: Vec<usize>,
    /// Coloring of `K_{n,n}` with lower spectral edge `L ⊕ 1` on both sides.
    pub cross: EdgeColoring,
    outer_spectra: SpectrumTable,
    inner_degrees: Vec<usize>,
}

impl CompositionPlan {
    /// Validates both colorings and prepares the cross-edge coloring.
    pub fn new(alpha_g: &EdgeColoring, alpha_h: &EdgeColoring) -> Result<Self> {
        let g = alpha_g.graph();
        let h = alpha_h.graph();
        if g.is_edgeless() {
            return Err(Error::Precondition(format!("outer graph {} has no edges", g.name())));
        }
        let cert = verify_interval(alpha_g);
        if !cert.valid {
            return Err(Error::Precondition(format!(
                "coloring of {} is not an interval coloring: {:?}",
                g.name(),
                cert.violations
            )));
        }
        let n = h.num_vertices();
        if n == 0 {
            return Err(invalid("inner graph H must have at least one vertex"));
        }
        let cert_h = verify_interval(alpha_h);
        if !cert_h.valid {
            return Err(Error::Precondition(format!(
                "coloring of {} is not an interval coloring: {:?}",
                h.name(),
                cert_h.violations
            )));
        }

        let outer = alpha_g.normalized();
        let inner = alpha_h.normalized();
        let inner_table = spectra(&inner)?;
        let upper_edge = upper_spectral_edge_all(&inner)?;
        if !upper_edge.is_continuous() {
            return Err(Error::Precondition(format!(
                "upper spectral edge {upper_edge} of {} is not continuous",
                h.name()
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| (inner_table.upper(w), w));
        let mut position = vec![0; n];
        for (j, &w) in order.iter().enumerate() {
            position[w] = j;
        }
        let cross = knn_prescribed_lse(n, &upper_edge.shift(1))?;

        Ok(CompositionPlan {
            t: cert.t,
            outer_spectra: spectra(&outer)?,
            inner_degrees: h.degrees(),
            outer,
            inner,
            upper_edge,
            order,
            position,
            cross,
        })
    }

    pub fn index(&self) -> CompositionIndex {
        CompositionIndex::new(self.outer.graph().num_vertices(), self.inner.graph().num_vertices())
    }

    /// `t·n + max L`, the number of colors of the product coloring.
    pub fn target_colors(&self) -> i64 {
        let n = self.inner.graph().num_vertices() as i64;
        self.t * n + self.upper_edge.max().unwrap_or(0)
    }

    /// Spectrum `[min, max]` that vertex `flat` of `G[H]` must receive:
    /// `max = S̄(u_i)·n + L(j)` and `min = (S̲(u_i) - 1)·n + L(j) - d_H(w_j) + 1`.
    pub fn predicted_window(&self, flat: usize) -> (i64, i64) {
        let idx = self.index();
        let (i, w) = idx.split(flat);
        let n = idx.inner() as i64;
        let l = self.upper_edge[self.position[w]];
        let hi = self.outer_spectra.upper(i) * n + l;
        let lo = (self.outer_spectra.lower(i) - 1) * n + l - self.inner_degrees[w] as i64 + 1;
        (lo, hi)
    }

    /// Colors `G[H]`.
    pub fn build(&self) -> Result<EdgeColoring> {
        let product = compose(self.outer.graph(), self.inner.graph())?;
        let idx = self.index();
        let n = idx.inner();
        let ni = n as i64;
        let colors = product
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (i, p) = idx.split(a);
                let (j, q) = idx.split(b);
                if i == j {
                    let c = self.inner.color(p, q).expect("edge of H");
                    (self.outer_spectra.lower(i) - 1) * ni + c
                } else {
                    // a < b puts copy i before copy j: x-side is i, y-side is j.
                    let c = self.outer.color(i, j).expect("edge of G");
                    let beta = self
                        .cross
                        .color(self.position[p], n + self.position[q])
                        .expect("edge of K_{n,n}");
                    (c - 1) * ni + beta
                }
            })
            .collect();
        EdgeColoring::new(product, colors)
    }
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.num_vertices() == b.num_vertices() && a.edges() == b.edges()
}

/// Interval coloring of `G[H]` from an interval coloring of `G` and an
/// interval coloring of `H` with continuous upper spectral edge (or `H`
/// edgeless).
pub fn compose_coloring(
    g: &Graph,
    alpha_g: &EdgeColoring,
    h: &Graph,
    alpha_h: &EdgeColoring,
) -> Result<EdgeColoring> {
    if !same_graph(g, alpha_g.graph()) {
        return Err(invalid(format!("coloring does not belong to {}", g.name())));
    }
    if !same_graph(h, alpha_h.graph()) {
        return Err(invalid(format!("coloring does not belong to {}", h.name())));
    }
    CompositionPlan::new(alpha_g, alpha_h)?.build()
}

/// How to obtain the coloring of the inner graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// First applicable of: edgeless, regular, complete bipartite, tree.
    Auto,
    Regular,
    Edgeless,
    CompleteBipartite,
    Tree,
    EvenCycle,
    /// The searched `(3n-2)`-coloring of `K_{2n}`, which maximizes the
    /// number of colors.
    K2nMax,
    /// Caller-supplied coloring of `H`.
    Prescribed(EdgeColoring),
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Regular => "regular",
            Strategy::Edgeless => "edgeless",
            Strategy::CompleteBipartite => "complete_bipartite",
            Strategy::Tree => "tree",
            Strategy::EvenCycle => "even_cycle",
            Strategy::K2nMax => "k2n_max",
            Strategy::Prescribed(_) => "prescribed",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('-', "_").as_str() {
            "auto" => Strategy::Auto,
            "regular" => Strategy::Regular,
            "edgeless" => Strategy::Edgeless,
            "complete_bipartite" | "kmn" => Strategy::CompleteBipartite,
            "tree" => Strategy::Tree,
            "even_cycle" => Strategy::EvenCycle,
            "k2n_max" => Strategy::K2nMax,
            other => return Err(invalid(format!("unknown strategy '{other}'"))),
        })
    }
}

/// Lower bound on `W(G[H])` (or upper bound on `w(G[H])`, when the outer
/// coloring is minimal) that a product coloring certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessedBound {
    pub formula: String,
    pub value: i64,
}

#[derive(Debug, Clone)]
pub struct AutoComposition {
    pub strategy: Strategy,
    pub inner: EdgeColoring,
    pub coloring: EdgeColoring,
    pub t_outer: i64,
    pub t_out: i64,
    pub bound: WitnessedBound,
}

/// Picks a coloring of `h` for `strategy` and returns it with the strategy
/// that was actually used.
pub fn inner_coloring(h: &Graph, strategy: &Strategy) -> Result<(EdgeColoring, Strategy)> {
    let class = classify(h);
    let edgeless = || EdgeColoring::new(h.clone(), Vec::new());
    match strategy {
        Strategy::Auto => {
            if h.is_edgeless() {
                return Ok((edgeless()?, Strategy::Edgeless));
            }
            if class.is_regular() {
                if let Ok(c) = regular_delta_color(h) {
                    return Ok((c, Strategy::Regular));
                }
            }
            if let Ok(c) = complete_bipartite_coloring_of(h) {
                return Ok((c, Strategy::CompleteBipartite));
            }
            if class.is_tree {
                return Ok((tree_continuous_use(h)?, Strategy::Tree));
            }
            Err(Error::NoStrategy(h.name().to_string()))
        }
        Strategy::Edgeless => {
            if !h.is_edgeless() {
                return Err(invalid(format!("{} has edges", h.name())));
            }
            Ok((edgeless()?, Strategy::Edgeless))
        }
        Strategy::Regular => Ok((regular_delta_color(h)?, Strategy::Regular)),
        Strategy::CompleteBipartite => {
            Ok((complete_bipartite_coloring_of(h)?, Strategy::CompleteBipartite))
        }
        Strategy::Tree => Ok((tree_continuous_use(h)?, Strategy::Tree)),
        Strategy::EvenCycle => Ok((even_cycle_coloring_of(h)?, Strategy::EvenCycle)),
        Strategy::K2nMax => {
            let nv = h.num_vertices();
            if nv % 2 == 1 || h.num_edges() != nv * nv.saturating_sub(1) / 2 || nv == 0 {
                return Err(invalid(format!("{} is not a complete graph of even order", h.name())));
            }
            let c = search_k2n_max(nv / 2)?;
            Ok((EdgeColoring::new(h.clone(), c.colors().to_vec())?, Strategy::K2nMax))
        }
        Strategy::Prescribed(c) => {
            if !same_graph(h, c.graph()) {
                return Err(invalid(format!("prescribed coloring does not belong to {}", h.name())));
            }
            Ok((c.clone(), strategy.clone()))
        }
    }
}

fn witnessed_bound(strategy: &Strategy, h: &Graph, t: i64, upper_max: i64) -> WitnessedBound {
    let n = h.num_vertices() as i64;
    let (formula, value) = match strategy {
        Strategy::Regular => {
            let r = classify(h).regular_degree.unwrap_or(0) as i64;
            ("t·n + r".to_string(), t * n + r)
        }
        Strategy::Edgeless => ("t·n".to_string(), t * n),
        Strategy::CompleteBipartite => ("(t + 1)(m + n) - 1".to_string(), (t + 1) * n - 1),
        Strategy::EvenCycle => {
            let k = n / 2;
            ("(2t + 1)k + 1 for C_2k".to_string(), (2 * t + 1) * k + 1)
        }
        Strategy::K2nMax => {
            let k = n / 2;
            ("(2t + 3)k - 2 for K_2k".to_string(), (2 * t + 3) * k - 2)
        }
        _ => ("t·n + max USE(H)".to_string(), t * n + upper_max),
    };
    WitnessedBound { formula, value }
}

/// Colors `h` according to `strategy` and composes with `alpha_g`.
pub fn compose_auto(alpha_g: &EdgeColoring, h: &Graph, strategy: &Strategy) -> Result<AutoComposition> {
    let (inner, used) = inner_coloring(h, strategy)?;
    let plan = CompositionPlan::new(alpha_g, &inner)?;
    let coloring = plan.build()?;
    let t_out = verify_interval(&coloring).t;
    let bound = witnessed_bound(&used, h, plan.t, plan.upper_edge.max().unwrap_or(0));
    Ok(AutoComposition {
        strategy: used,
        inner,
        coloring,
        t_outer: plan.t,
        t_out,
        bound,
    })
}

/// Largest `n` for which [`search_k2n_max`] runs.
pub const K2N_SEARCH_LIMIT: usize = 4;

/// Interval `(3n-2)`-coloring of `K_{2n}` in which vertices `2i-2` and
/// `2i-1` both have spectrum `[i, i+2n-2]` for `i = 1..=n`.
///
/// Found by backtracking over the canonical edge order with colors tried in
/// ascending order, so the witness is the lexicographically first one.
pub fn search_k2n_max(n: usize) -> Result<EdgeColoring> {
    if n == 0 || n > K2N_SEARCH_LIMIT {
        return Err(invalid(format!("K_2n search supports 1 <= n <= {K2N_SEARCH_LIMIT}, got {n}")));
    }
    let g = crate::generators::complete(2 * n)?;
    let nv = 2 * n;
    let span = 2 * n as i64 - 2;
    let lower: Vec<i64> = (0..nv).map(|v| (v / 2) as i64 + 1).collect();
    let mut used = vec![0u64; nv];
    let mut colors = vec![0i64; g.num_edges()];

    fn go(
        k: usize,
        edges: &[(usize, usize)],
        lower: &[i64],
        span: i64,
        used: &mut [u64],
        colors: &mut [i64],
    ) -> bool {
        let Some(&(u, v)) = edges.get(k) else {
            return true;
        };
        let lo = lower[u].max(lower[v]);
        let hi = (lower[u] + span).min(lower[v] + span);
        for c in lo..=hi {
            let bit = 1u64 << c;
            if used[u] & bit != 0 || used[v] & bit != 0 {
                continue;
            }
            used[u] |= bit;
            used[v] |= bit;
            colors[k] = c;
            if go(k + 1, edges, lower, span, used, colors) {
                return true;
            }
            used[u] &= !bit;
            used[v] &= !bit;
        }
        false
    }

    if !go(0, g.edges(), &lower, span, &mut used, &mut colors) {
        return Err(Error::NotFound(format!("no paired-spectrum coloring of K_{}", nv)));
    }
    EdgeColoring::new(g, colors)
}
