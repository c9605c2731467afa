//! Criterion benchmarks for kstab-core; see `benches/`.
