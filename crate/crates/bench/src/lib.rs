//! Criterion benchmarks for `maroni-core`; see `benches/classes.rs`.
