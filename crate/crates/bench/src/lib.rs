//! Criterion benchmarks for field arithmetic, scheme construction and
//! repair; see `benches/repair.rs`.
