//! Edge colorings, vertex spectra and interval verification.

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};
use crate::sequence::ColorSequence;

/// A color per edge, parallel to the graph's canonical edge list.
///
/// Colors are stored raw; intermediate constructions may use any integer
/// range, and [`verify_interval`] reports them relabelled to start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoring")]
pub struct EdgeColoring {
    graph: Graph,
    colors: Vec<i64>,
}

#[derive(Deserialize)]
struct RawColoring {
    graph: Graph,
    colors: Vec<i64>,
}

impl TryFrom<RawColoring> for EdgeColoring {
    type Error = Error;

    fn try_from(raw: RawColoring) -> Result<Self> {
        EdgeColoring::new(raw.graph, raw.colors)
    }
}

impl EdgeColoring {
    pub fn new(graph: Graph, colors: Vec<i64>) -> Result<Self> {
        if colors.len() != graph.num_edges() {
            return Err(invalid(format!(
                "{} colors given for {} edges",
                colors.len(),
                graph.num_edges()
            )));
        }
        Ok(EdgeColoring { graph, colors })
    }

    /// Builds a coloring by evaluating `f` on every canonical edge.
    pub fn from_fn(graph: Graph, f: impl FnMut(&Edge) -> i64) -> Self {
        let colors = graph.edges().iter().map(f).collect();
        EdgeColoring { graph, colors }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colors(&self) -> &[i64] {
        &self.colors
    }

    pub fn color(&self, u: usize, v: usize) -> Option<i64> {
        self.graph.edge_index(u, v).map(|i| self.colors[i])
    }

    pub fn min_color(&self) -> Option<i64> {
        self.colors.iter().copied().min()
    }

    pub fn max_color(&self) -> Option<i64> {
        self.colors.iter().copied().max()
    }

    /// Number of distinct colors used.
    pub fn distinct_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Same coloring relabelled so the smallest color is 1.
    pub fn normalized(&self) -> EdgeColoring {
        match self.min_color() {
            Some(m) => EdgeColoring {
                graph: self.graph.clone(),
                colors: self.colors.iter().map(|&c| c - m + 1).collect(),
            },
            None => self.clone(),
        }
    }

    pub fn into_parts(self) -> (Graph, Vec<i64>) {
        (self.graph, self.colors)
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

/// Per-vertex color sets with their extremes. Isolated vertices have an
/// empty set and report 0 for both extremes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    sets: Vec<Vec<i64>>,
}

impl SpectrumTable {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sorted colors at `v`.
    pub fn spectrum(&self, v: usize) -> &[i64] {
        &self.sets[v]
    }

    pub fn lower(&self, v: usize) -> i64 {
        self.sets[v].first().copied().unwrap_or(0)
    }

    pub fn upper(&self, v: usize) -> i64 {
        self.sets[v].last().copied().unwrap_or(0)
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.sets[v].is_empty()
    }

    /// True iff the colors at `v` are consecutive integers.
    pub fn is_interval(&self, v: usize) -> bool {
        self.sets[v].windows(2).all(|w| w[1] == w[0] + 1)
    }
}

/// Collects every properness clash as `(vertex, first edge, second edge, color)`.
fn clashes(c: &EdgeColoring) -> Vec<(usize, Edge, Edge, i64)> {
    let g = c.graph();
    let mut out = Vec::new();
    for (v, inc) in g.incidence().into_iter().enumerate() {
        let mut seen: Vec<(i64, usize)> = inc.iter().map(|&(_, e)| (c.colors[e], e)).collect();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                out.push((v, g.edges()[w[0].1], g.edges()[w[1].1], w[0].0));
            }
        }
    }
    out
}

fn raw_spectra(c: &EdgeColoring) -> SpectrumTable {
    let mut sets = vec![Vec::new(); c.graph.num_vertices()];
    for (&(u, v), &col) in c.graph.edges().iter().zip(&c.colors) {
        sets[u].push(col);
        sets[v].push(col);
    }
    for s in &mut sets {
        s.sort_unstable();
    }
    SpectrumTable { sets }
}

/// Spectra of every vertex; fails on the first properness clash.
pub fn spectra(c: &EdgeColoring) -> Result<SpectrumTable> {
    if let Some(&(vertex, first, second, color)) = clashes(c).first() {
        return Err(Error::Improper {
            vertex,
            first,
            second,
            color,
        });
    }
    Ok(raw_spectra(c))
}

/// One reason a coloring is not an interval coloring. Colors are as stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Improper {
        vertex: usize,
        edges: [Edge; 2],
        color: i64,
    },
    SpectrumGap {
        vertex: usize,
        colors: Vec<i64>,
    },
    IsolatedVertex {
        vertex: usize,
    },
    UnusedColors {
        colors: Vec<i64>,
    },
}

/// Outcome of [`verify_interval`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCertificate {
    pub valid: bool,
    /// Span of the used colors, `max - min + 1`; 0 for an edgeless graph.
    pub t: i64,
    /// Per-vertex `[min, max]` after relabelling the smallest color to 1;
    /// `None` for isolated vertices.
    pub windows: Vec<Option<(i64, i64)>>,
    pub violations: Vec<Violation>,
}

impl Serialize for IntervalCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Report<'a> {
            valid: bool,
            t: i64,
            violations: &'a [Violation],
            spectra: Windows<'a>,
        }
        struct Windows<'a>(&'a [Option<(i64, i64)>]);
        impl Serialize for Windows<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (v, w) in self.0.iter().enumerate() {
                    let pair = w.map(|(a, b)| [a, b]).unwrap_or([0, 0]);
                    map.serialize_entry(&v.to_string(), &pair)?;
                }
                map.end()
            }
        }
        Report {
            valid: self.valid,
            t: self.t,
            violations: &self.violations,
            spectra: Windows(&self.windows),
        }
        .serialize(s)
    }
}

impl IntervalCertificate {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Checks properness, per-vertex contiguity and that every color between
/// the smallest and largest used one appears. Reports all failures.
pub fn verify_interval(c: &EdgeColoring) -> IntervalCertificate {
    let g = c.graph();
    let mut violations: Vec<Violation> = clashes(c)
        .into_iter()
        .map(|(vertex, a, b, color)| Violation::Improper {
            vertex,
            edges: [a, b],
            color,
        })
        .collect();

    let table = raw_spectra(c);
    let edgeless = g.is_edgeless();
    for v in 0..g.num_vertices() {
        if table.is_isolated(v) {
            if !edgeless {
                violations.push(Violation::IsolatedVertex { vertex: v });
            }
        } else if !table.is_interval(v) {
            violations.push(Violation::SpectrumGap {
                vertex: v,
                colors: table.spectrum(v).to_vec(),
            });
        }
    }

    let (lo, hi) = match (c.min_color(), c.max_color()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => (1, 0),
    };
    let mut used: Vec<i64> = c.colors().to_vec();
    used.sort_unstable();
    used.dedup();
    let unused: Vec<i64> = (lo..=hi).filter(|x| used.binary_search(x).is_err()).collect();
    if !unused.is_empty() {
        violations.push(Violation::UnusedColors { colors: unused });
    }

    let windows = (0..g.num_vertices())
        .map(|v| {
            (!table.is_isolated(v)).then(|| (table.lower(v) - lo + 1, table.upper(v) - lo + 1))
        })
        .collect();

    IntervalCertificate {
        valid: violations.is_empty(),
        t: hi - lo + 1,
        windows,
        violations,
    }
}

fn extremes(c: &EdgeColoring, vs: &[usize], upper: bool) -> Result<ColorSequence> {
    let table = spectra(c)?;
    let n = c.graph().num_vertices();
    if let Some(&v) = vs.iter().find(|&&v| v >= n) {
        return Err(invalid(format!("vertex {v} out of range")));
    }
    if c.graph().is_edgeless() {
        return ColorSequence::new(vec![0; vs.len()]);
    }
    if let Some(&v) = vs.iter().find(|&&v| table.is_isolated(v)) {
        return Err(invalid(format!(
            "vertex {v} is isolated in a graph with edges; its spectral edge is undefined"
        )));
    }
    let values = vs
        .iter()
        .map(|&v| if upper { table.upper(v) } else { table.lower(v) })
        .collect();
    ColorSequence::new(values)
}

/// Sorted per-vertex spectrum minima over `vs` (the lower spectral edge).
pub fn lower_spectral_edge(c: &EdgeColoring, vs: &[usize]) -> Result<ColorSequence> {
    extremes(c, vs, false)
}

/// Sorted per-vertex spectrum maxima over `vs` (the upper spectral edge).
pub fn upper_spectral_edge(c: &EdgeColoring, vs: &[usize]) -> Result<ColorSequence> {
    extremes(c, vs, true)
}

/// Upper spectral edge over every vertex.
pub fn upper_spectral_edge_all(c: &EdgeColoring) -> Result<ColorSequence> {
    let all: Vec<usize> = (0..c.graph().num_vertices()).collect();
    upper_spectral_edge(c, &all)
}

/// Adds `p` to every color. The result must keep every color at least 1.
pub fn shift_coloring(c: &EdgeColoring, p: i64) -> Result<EdgeColoring> {
    if let Some(m) = c.min_color() {
        if m + p < 1 {
            return Err(invalid(format!(
                "shift by {p} would push color {m} below 1"
            )));
        }
    }
    EdgeColoring::new(
        c.graph().clone(),
        c.colors().iter().map(|&x| x + p).collect(),
    )
}
