//! Criterion benchmarks for the core algorithms; see `benches/groups.rs`.
