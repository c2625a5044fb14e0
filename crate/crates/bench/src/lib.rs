//! Criterion benchmarks for qforms-core live in `benches/`.
