//! Benchmarks for icolor-core live under benches/.
