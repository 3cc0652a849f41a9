//! Graphviz export.

use std::fmt::Write;

use crate::coloring::EdgeColoring;

/// Renders the coloring as an undirected DOT graph: one line per vertex,
/// then one line per edge in canonical order with its color as the label.
pub fn to_dot(c: &EdgeColoring) -> String {
    let g = c.graph();
    let mut out = String::new();
    let name = g.name().replace('\\', "\\\\").replace('"', "\\\"");
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for v in 0..g.num_vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (&(u, v), col) in g.edges().iter().zip(c.colors()) {
        writeln!(out, "  {u} -- {v} [label=\"{col}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
