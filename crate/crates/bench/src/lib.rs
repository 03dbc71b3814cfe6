//! Criterion benchmarks for `disjoint-sm`; see `benches/engine.rs`.
