//! Benchmark-only crate; see `benches/numerics.rs`.
