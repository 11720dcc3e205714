//! Criterion benchmarks for the `egl` crate; see `benches/`.
