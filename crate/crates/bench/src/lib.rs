//! Criterion benchmarks for the exact pipeline and the numeric solver; see `benches/`.
