//! Benchmarks for `zeno-core` live under `benches/`.
