//! Benchmarks for the loader families live under `benches/`.
