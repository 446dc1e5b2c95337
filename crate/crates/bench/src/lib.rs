//! Criterion benchmarks for `chebycycle`; see `benches/chebycycle.rs`.
//!
//! Run with `cargo bench -p chebycycle-bench`.
