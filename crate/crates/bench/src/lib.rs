//! Benchmarks for `arcwalk`; see `benches/`.
