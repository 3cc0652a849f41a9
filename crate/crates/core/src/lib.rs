//! Interval edge-colorings of graphs and of their lexicographic products.
//!
//! An interval `t`-coloring is a proper edge-coloring with colors `1..=t`,
//! all used, in which the colors at every vertex are consecutive integers.
//! This crate builds such colorings for standard families, lifts them to
//! products `G[H]`, verifies arbitrary colorings, and searches small graphs
//! exhaustively.

pub mod coloring;
pub mod composition;
pub mod construct;
pub mod dot;
mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod search;
pub mod sequence;

pub use coloring::{
    lower_spectral_edge, shift_coloring, spectra, upper_spectral_edge, upper_spectral_edge_all,
    verify_interval, EdgeColoring, IntervalCertificate, SpectrumTable, Violation,
};
pub use composition::{
    compose_auto, compose_coloring, search_k2n_max, AutoComposition, CompositionPlan,
    Strategy, WitnessedBound,
};
pub use construct::{
    complete_bipartite_color, even_cycle_color, knn_prescribed_lse, konig_delta_color,
    regular_delta_color, tree_continuous_use,
};
pub use error::{Error, Result};
pub use generators::{generate, Family};
pub use graph::{classify, compose, Classification, CompositionIndex, Edge, Graph};
pub use search::{
    bounds, chromatic_index_small, find_continuous_use, find_interval_t, Bounds, SearchBudget,
    SearchOutcome,
};
pub use sequence::ColorSequence;
