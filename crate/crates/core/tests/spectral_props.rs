//! Transform-layer invariants: round trip, Parseval, linearity, and agreement
//! of the fast path with the direct sums.

use helmsym::{
    dst_forward, dst_forward_direct, sine_synthesis, synthesize_on_grid, synthesize_on_grid_direct,
    weighted_norm, GridFunction, GridSpec, SineSpectrum,
};
use proptest::prelude::*;

/// Deterministic quasi-random value in [-1, 1] used to fill test vectors.
fn noise(seed: u64, i: usize) -> f64 {
    let mut z = seed
        .wrapping_add(i as u64)
        .wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z ^= z >> 30;
    z = z.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^= z >> 27;
    (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}

fn noisy_function(grid: GridSpec, seed: u64) -> GridFunction {
    let values = (0..grid.interior_len()).map(|i| noise(seed, i)).collect();
    GridFunction::new(grid, values).unwrap()
}

#[test]
fn round_trip_across_grid_sizes() {
    // synthesis at the grid points inverts the forward transform
    let mut n = 4;
    while n <= 1024 {
        let grid = GridSpec::new(n).unwrap();
        let g = noisy_function(grid, 7);
        let s = dst_forward(&g);
        let back = synthesize_on_grid(&s);
        for (a, b) in back.values().iter().zip(g.values()) {
            assert!((a - b).abs() <= 1e-12, "N = {n}: {a} vs {b}");
        }
        // pointwise synthesis agrees at individual grid points too
        for j in [1, n / 2, n - 1] {
            let v = sine_synthesis(&s, grid.x(j));
            assert!((v - g.values()[j - 1]).abs() <= 1e-12);
        }
        n *= 2;
    }
}

#[test]
fn discrete_parseval_across_grid_sizes() {
    let mut n = 4;
    while n <= 1024 {
        let grid = GridSpec::new(n).unwrap();
        let g = noisy_function(grid, 11);
        let s = dst_forward(&g);
        let spectral = weighted_norm(&s, 0).powi(2);
        let physical = g.values().iter().map(|v| v * v).sum::<f64>() / n as f64;
        assert!(
            (spectral - physical).abs() <= 1e-12 * physical,
            "N = {n}: {spectral} vs {physical}"
        );
        n *= 2;
    }
}

#[test]
fn fast_path_matches_direct_sums() {
    // includes the non-dyadic sizes the experiments use
    for n in [162usize, 324, 1024, 2048, 4096] {
        let grid = GridSpec::new(n).unwrap();
        let g = noisy_function(grid, 13);
        let fast = dst_forward(&g);
        let direct = dst_forward_direct(&g);
        let mut diff = SineSpectrum::zero(grid);
        for m in 1..n {
            *diff.coeff_mut(m).unwrap() = fast.coeff(m) - direct.coeff(m);
        }
        let rel = weighted_norm(&diff, 0) / weighted_norm(&direct, 0);
        assert!(rel <= 1e-12, "N = {n}: relative deviation {rel}");

        // synthesis side of the fast path
        let back_fast = synthesize_on_grid(&direct);
        let back_direct = synthesize_on_grid_direct(&direct);
        let num: f64 = back_fast
            .values()
            .iter()
            .zip(back_direct.values())
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        let den: f64 = back_direct.values().iter().map(|v| v * v).sum();
        assert!((num / den).sqrt() <= 1e-12, "synthesis N = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_on_random_data(seed in 0u64..1_000_000, exp in 2u32..8) {
        let n = 1usize << exp;
        let grid = GridSpec::new(n).unwrap();
        let g = noisy_function(grid, seed);
        let back = synthesize_on_grid(&dst_forward(&g));
        for (a, b) in back.values().iter().zip(g.values()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn transform_is_linear(seed in 0u64..1_000_000, c in -4.0f64..4.0) {
        let grid = GridSpec::new(64).unwrap();
        let f = noisy_function(grid, seed);
        let g = noisy_function(grid, seed ^ 0xdead_beef);
        let combo = GridFunction::new(
            grid,
            f.values().iter().zip(g.values()).map(|(a, b)| c * a + b).collect(),
        ).unwrap();
        let sf = dst_forward(&f);
        let sg = dst_forward(&g);
        let sc = dst_forward(&combo);
        for n in 1..64 {
            let want = c * sf.coeff(n) + sg.coeff(n);
            prop_assert!((sc.coeff(n) - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn parseval_on_random_data(seed in 0u64..1_000_000) {
        let grid = GridSpec::new(256).unwrap();
        let g = noisy_function(grid, seed);
        let spectral = weighted_norm(&dst_forward(&g), 0).powi(2);
        let physical = g.values().iter().map(|v| v * v).sum::<f64>() / 256.0;
        prop_assert!((spectral - physical).abs() <= 1e-12 * physical.max(1e-30));
    }
}
