//! Sweep-level checks: h-refinement slopes per scheme, the full ladder
//! exponent table, and an independent from-scratch recomputation of one row.

use std::f64::consts::PI;

use helmsym::{
    run_case, sweep_h_refinement, sweep_ladder, Scheme, SourceKind, SourceSpec, WaveNumber,
};

fn k(nk: u32) -> WaveNumber {
    WaveNumber::new(nk, 1.0).unwrap()
}

#[test]
fn h_refinement_slopes_match_formal_orders() {
    let kk = k(5);
    let src = SourceSpec::monochromatic(kk).unwrap();
    for scheme in Scheme::ALL {
        let rows =
            sweep_h_refinement(scheme, kk, &[64, 128, 256, 512], &src, scheme.default_p()).unwrap();
        let mut slopes = Vec::new();
        for w in rows.windows(2) {
            if !w[1].floor {
                slopes.push((w[0].l2_error / w[1].l2_error).log2());
            }
        }
        let slope = slopes.iter().sum::<f64>() / slopes.len() as f64;
        let m = scheme.order() as f64;
        assert!(
            (slope - m).abs() <= 0.1,
            "{scheme}: slope {slope}, want {m}"
        );
    }
}

#[test]
fn ladder_exponent_table() {
    // (scheme, n_k0, N0, alpha_l2, tol_l2, alpha_h1, tol_h1)
    let table = [
        (Scheme::Cls, 5u32, 84usize, 2.0, 0.2, 3.0, 0.2),
        (Scheme::Df2, 10, 164, 1.0, 0.2, 2.0, 0.2),
        (Scheme::Df4, 20, 320, 3.0, 0.3, 4.0, 0.3),
        (Scheme::Df6, 20, 108, 5.0, 0.3, 6.0, 0.3),
    ];
    for (scheme, nk0, n0, al2, tl2, ah1, th1) in table {
        let rows = sweep_ladder(
            scheme,
            k(nk0),
            n0,
            5,
            SourceKind::Monochromatic,
            scheme.default_p(),
        )
        .unwrap();
        let (l2, h1) = helmsym::ladder_exponents(&rows).unwrap();
        assert!(
            (l2.alpha - al2).abs() <= tl2,
            "{scheme}: alpha_l2 {}",
            l2.alpha
        );
        assert!(
            (h1.alpha - ah1).abs() <= th1,
            "{scheme}: alpha_h1 {}",
            h1.alpha
        );
    }
}

#[test]
fn row_recomputed_from_symbols_alone() {
    // df2, k = 10pi+1, N = 256, mixed source: rebuild the error norms from
    // the raw formulas with no library calls on the solve path
    let kk = k(10);
    let n = 256usize;
    let row = run_case(Scheme::Df2, kk, n, &SourceSpec::mixed(), 0).unwrap();

    let kv = 10.0 * PI + 1.0;
    let h = 1.0 / n as f64;
    let kt = (2.0 / h) * (kv * h / 2.0).sin();
    let mut l2_sq = 0.0;
    let mut h1_sq = 0.0;
    for mode in [5usize, 10, 20, 40, 80, 160] {
        let xi = mode as f64 * PI;
        let exact = 1.0 / (kv * kv - xi * xi);
        let lh = kv * kv - (kv * kv / (kt * kt)) * ((2.0 / h) * (xi * h / 2.0).sin()).powi(2);
        let d = exact - 1.0 / lh;
        l2_sq += d * d;
        h1_sq += xi * xi * d * d;
    }
    let l2 = (0.5 * l2_sq).sqrt();
    let h1 = (0.5 * h1_sq).sqrt();
    assert!(
        (row.l2_error - l2).abs() <= 1e-12 * l2,
        "{} vs {l2}",
        row.l2_error
    );
    assert!(
        (row.h1_semi_error - h1).abs() <= 1e-12 * h1,
        "{} vs {h1}",
        row.h1_semi_error
    );
    assert!((row.l2_scaled - l2 / (kv * h * h)).abs() <= 1e-12 * row.l2_scaled);
    assert!((row.h1_scaled - h1 / (kv * kv * h * h)).abs() <= 1e-12 * row.h1_scaled);
}

#[test]
fn mixed_ladder_also_fits_df4_window() {
    // same ladder machinery driven by the fixed mixed source; rungs stop at
    // n_k = 160 because the source has no mode near k beyond its band edge
    let rows = sweep_ladder(Scheme::Df4, k(40), 636, 3, SourceKind::Mixed, 2).unwrap();
    let (l2, _) = helmsym::ladder_exponents(&rows).unwrap();
    assert!((l2.alpha - 3.0).abs() <= 0.4, "alpha_l2 {}", l2.alpha);
}
