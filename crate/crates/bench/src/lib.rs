//! Criterion benchmarks for ggmorse-core; see `benches/`.
