//! Benchmarks for the solvers live under `benches/`.
