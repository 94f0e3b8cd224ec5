//! Shared fixtures for the benchmarks.

use helmsym::{GridFunction, GridSpec, SourceSpec, WaveNumber};

/// Deterministic filler in [-1, 1].
pub fn noise(seed: u64, i: usize) -> f64 {
    let mut z = seed
        .wrapping_add(i as u64)
        .wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z ^= z >> 30;
    z = z.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^= z >> 27;
    (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}

pub fn noisy_function(n: usize, seed: u64) -> GridFunction {
    let grid = GridSpec::new(n).expect("valid grid");
    let values = (0..grid.interior_len()).map(|i| noise(seed, i)).collect();
    GridFunction::new(grid, values).expect("length")
}

pub fn bench_wavenumber() -> WaveNumber {
    WaveNumber::new(20, 1.0).expect("offset 1")
}

pub fn bench_source() -> SourceSpec {
    SourceSpec::mixed()
}
