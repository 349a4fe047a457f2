//! Benchmarks for braidkit live in `benches/`; this crate has no library code.
