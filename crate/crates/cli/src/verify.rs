//! The acceptance suite: one check per shipped claim, with every tolerance
//! pinned here. `helmsym verify` and the `acceptance` test target both run
//! these.

use helmsym::{
    dst_forward, dst_forward_direct, even_ceil, ladder_exponents, left_symbol, profile, psi,
    run_case, sine_synthesis, solve_physical, solve_spectral, sweep_h_refinement, sweep_kh_fixed,
    sweep_ladder, weighted_norm, GridFunction, GridSpec, Scheme, SineSpectrum, SourceKind,
    SourceSpec, SweepRow, WaveNumber,
};

/// Outcome of one acceptance check.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn k_of(nk: u32) -> WaveNumber {
    WaveNumber::new(nk, 1.0).expect("offset 1")
}

/// Ladder starts used by the order checks: (n_k0, N0), five rungs each.
/// N0 realizes kh0 <= 0.2 except for df6, which starts at kh0 ~ 0.6 so that
/// no rung falls below the double-precision floor before the fit has its
/// three steps.
pub const CLS_LADDER: (u32, usize) = (5, 84);
pub const DF2_LADDER: (u32, usize) = (10, 164);
pub const DF4_LADDER: (u32, usize) = (20, 320);
pub const DF6_LADDER: (u32, usize) = (20, 108);
pub const LADDER_RUNGS: usize = 5;

const PSI_TABLE: [(u32, f64); 5] = [
    (5, 0.010_638_4),
    (10, 0.008_321_66),
    (20, 0.005_589_38),
    (40, 0.003_296_17),
    (80, 0.001_804_66),
];

/// Criterion 1: psi_0 at the source frequency k-1 on the h = 1/ceil(k) grid
/// matches the five tabulated values to 1e-3 relative.
pub fn criterion_1() -> CriterionResult {
    let mut worst = 0.0f64;
    let mut detail = String::new();
    let mut passed = true;
    for (nk, want) in PSI_TABLE {
        let k = k_of(nk);
        let n = k.value().ceil() as usize;
        let grid = match GridSpec::new(n) {
            Ok(g) => g,
            Err(e) => {
                return CriterionResult {
                    id: 1,
                    name: "preasymptotic psi_0 table",
                    passed: false,
                    detail: e.to_string(),
                }
            }
        };
        match psi(Scheme::Cls, k, grid, 0, nk as usize) {
            Ok(got) => {
                let rel = (got - want).abs() / want;
                worst = worst.max(rel);
                if rel > 1e-3 {
                    passed = false;
                    detail.push_str(&format!("k={nk}pi+1: {got:.7} vs {want} (rel {rel:.2e}); "));
                }
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("k={nk}pi+1: {e}; "));
            }
        }
    }
    if passed {
        detail = format!("5 values match to 1e-3 (worst rel {worst:.2e})");
    }
    CriterionResult {
        id: 1,
        name: "preasymptotic psi_0 table",
        passed,
        detail,
    }
}

fn mono_ladder(scheme: Scheme, cfg: (u32, usize)) -> Result<Vec<SweepRow>, helmsym::Error> {
    sweep_ladder(
        scheme,
        k_of(cfg.0),
        cfg.1,
        LADDER_RUNGS,
        SourceKind::Monochromatic,
        scheme.default_p(),
    )
}

fn in_window(alpha: f64, center: f64, half_width: f64) -> bool {
    (alpha - center).abs() <= half_width
}

/// Criterion 2: classical-scheme ladder exponents alpha_L2 = 2 +/- 0.2 and
/// alpha_H1 = 3 +/- 0.2, plus h-refinement slope 2 +/- 0.1 at fixed k.
pub fn criterion_2() -> CriterionResult {
    let run = || -> Result<(f64, f64, f64), helmsym::Error> {
        let rows = mono_ladder(Scheme::Cls, CLS_LADDER)?;
        let (l2, h1) = ladder_exponents(&rows)?;
        let k = k_of(5);
        let src = SourceSpec::monochromatic(k)?;
        let href = sweep_h_refinement(Scheme::Cls, k, &[64, 128, 256, 512], &src, 0)?;
        let mut slopes = Vec::new();
        for w in href.windows(2) {
            slopes.push((w[0].l2_error / w[1].l2_error).log2());
        }
        let slope = slopes.iter().sum::<f64>() / slopes.len() as f64;
        Ok((l2.alpha, h1.alpha, slope))
    };
    match run() {
        Ok((al2, ah1, slope)) => {
            let passed =
                in_window(al2, 2.0, 0.2) && in_window(ah1, 3.0, 0.2) && in_window(slope, 2.0, 0.1);
            CriterionResult {
                id: 2,
                name: "classical-scheme orders",
                passed,
                detail: format!(
                    "alpha_l2 = {al2:.3} (want 2+/-0.2), alpha_h1 = {ah1:.3} (want 3+/-0.2), h-slope = {slope:.3} (want 2+/-0.1)"
                ),
            }
        }
        Err(e) => CriterionResult {
            id: 2,
            name: "classical-scheme orders",
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Max/min spread of the H1 scaled column over the rungs before any floor flag.
fn h1_scaled_variation(rows: &[SweepRow]) -> f64 {
    let cut = rows.iter().position(|r| r.floor).unwrap_or(rows.len());
    let vals: Vec<f64> = rows[..cut].iter().map(|r| r.h1_scaled).collect();
    let max = vals.iter().cloned().fold(f64::MIN, f64::max);
    let min = vals.iter().cloned().fold(f64::MAX, f64::min);
    max / min - 1.0
}

/// Criterion 3: dispersion-free fitted L2 exponents 1 +/- 0.2 (df2),
/// 3 +/- 0.3 (df4), 5 +/- 0.3 (df6); H1 exponents m +/- tolerance; and the
/// H1 scaled column varies by less than 15% along each ladder.
pub fn criterion_3() -> CriterionResult {
    let cases = [
        (Scheme::Df2, DF2_LADDER, 1.0, 0.2, 2.0, 0.2),
        (Scheme::Df4, DF4_LADDER, 3.0, 0.3, 4.0, 0.3),
        (Scheme::Df6, DF6_LADDER, 5.0, 0.3, 6.0, 0.3),
    ];
    let mut passed = true;
    let mut detail = String::new();
    for (scheme, cfg, al2_want, al2_tol, ah1_want, ah1_tol) in cases {
        match mono_ladder(scheme, cfg).and_then(|rows| {
            let fits = ladder_exponents(&rows)?;
            Ok((fits, h1_scaled_variation(&rows)))
        }) {
            Ok(((l2, h1), var)) => {
                let ok = in_window(l2.alpha, al2_want, al2_tol)
                    && in_window(h1.alpha, ah1_want, ah1_tol)
                    && var < 0.15;
                if !ok {
                    passed = false;
                }
                detail.push_str(&format!(
                    "{scheme}: alpha_l2 = {:.3} (want {al2_want}+/-{al2_tol}), alpha_h1 = {:.3} (want {ah1_want}+/-{ah1_tol}), h1-scaled spread = {:.1}% (< 15%); ",
                    l2.alpha,
                    h1.alpha,
                    var * 100.0
                ));
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("{scheme}: {e}; "));
            }
        }
    }
    CriterionResult {
        id: 3,
        name: "dispersion-free orders",
        passed,
        detail,
    }
}

/// The (scheme, k, N, source) matrix shared by the bound and solver checks.
fn case_matrix() -> Vec<(Scheme, WaveNumber, usize, SourceSpec)> {
    let mut cases = Vec::new();
    for scheme in Scheme::ALL {
        for nk in [5u32, 10, 20, 40] {
            let k = k_of(nk);
            for n in [16usize, 64, 256, 1024] {
                if k.value() / n as f64 > 1.0 {
                    continue;
                }
                cases.push((
                    scheme,
                    k,
                    n,
                    SourceSpec::monochromatic(k).expect("offset 1"),
                ));
                if n > 160 {
                    cases.push((scheme, k, n, SourceSpec::mixed()));
                }
            }
        }
    }
    cases
}

/// Criterion 4: measured error norms never exceed the bounds (factor 1 + 1e-10), and a
/// single-mode source at the argmax frequency attains the L2 bound to 1e-10.
pub fn criterion_4() -> CriterionResult {
    let mut passed = true;
    let mut detail = String::new();
    let mut checked = 0usize;
    for (scheme, k, n, src) in case_matrix() {
        match run_case(scheme, k, n, &src, scheme.default_p()) {
            Ok(row) => {
                if row.floor {
                    continue;
                }
                checked += 1;
                if row.l2_error > row.bound_l2 * (1.0 + 1e-10)
                    || row.h1_semi_error > row.bound_h1 * (1.0 + 1e-10)
                {
                    passed = false;
                    detail.push_str(&format!("{scheme} k={k} N={n}: error exceeds bound; "));
                }
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("{scheme} k={k} N={n}: {e}; "));
            }
        }
    }

    let mut worst_gap = 0.0f64;
    for scheme in Scheme::ALL {
        let p = scheme.default_p();
        let k = k_of(10);
        let grid = GridSpec::new(256).expect("valid");
        let attain = profile(scheme, k, grid, p).and_then(|prof| {
            let src = SourceSpec::new(vec![(prof.argmax_n, 1.0)])?;
            run_case(scheme, k, 256, &src, p)
        });
        match attain {
            Ok(row) => {
                let gap = (row.l2_error - row.bound_l2).abs() / row.bound_l2;
                worst_gap = worst_gap.max(gap);
                if gap > 1e-10 {
                    passed = false;
                    detail.push_str(&format!("{scheme}: attainability gap {gap:.2e}; "));
                }
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("{scheme} attainability: {e}; "));
            }
        }
    }
    if passed {
        detail = format!(
            "{checked} cases below bounds; argmax source attains L2 bound (worst gap {worst_gap:.2e})"
        );
    }
    CriterionResult {
        id: 4,
        name: "error bounds and attainability",
        passed,
        detail,
    }
}

/// Criterion 5: spectral and tridiagonal solvers agree to 1e-10 relative L2 across the
/// case matrix.
pub fn criterion_5() -> CriterionResult {
    let mut passed = true;
    let mut detail = String::new();
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for (scheme, k, n, src) in case_matrix() {
        let grid = GridSpec::new(n).expect("valid");
        let run = src.spectrum(grid).and_then(|f_hat| {
            let spectral = solve_spectral(scheme, k, grid, &f_hat)?;
            let physical = solve_physical(scheme, k, grid, &src)?;
            let mut diff = SineSpectrum::zero(grid);
            for m in 1..n {
                *diff.coeff_mut(m)? = physical.spectrum().coeff(m) - spectral.spectrum().coeff(m);
            }
            Ok(weighted_norm(&diff, 0) / weighted_norm(spectral.spectrum(), 0))
        });
        match run {
            Ok(rel) => {
                checked += 1;
                worst = worst.max(rel);
                if rel > 1e-10 {
                    passed = false;
                    detail.push_str(&format!("{scheme} k={k} N={n}: rel {rel:.2e}; "));
                }
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("{scheme} k={k} N={n}: {e}; "));
            }
        }
    }
    if passed {
        detail = format!("{checked} solves agree (worst rel {worst:.2e})");
    }
    CriterionResult {
        id: 5,
        name: "solver oracle equivalence",
        passed,
        detail,
    }
}

/// Criterion 6: the df left symbol vanishes at xi = k to 1e-10 * k^2 over the (k, kh)
/// test grid.
pub fn criterion_6() -> CriterionResult {
    let mut passed = true;
    let mut detail = String::new();
    let mut worst = 0.0f64;
    for nk in [5u32, 10, 20, 40, 80] {
        let k = k_of(nk);
        for kh in [0.05, 0.1, 0.2, 0.5, 1.0] {
            let n = even_ceil(k.value() / kh);
            let grid = GridSpec::new(n).expect("valid");
            for scheme in Scheme::DISPERSION_FREE {
                match left_symbol(scheme, k, grid, k.value()) {
                    Ok(v) => {
                        let rel = v.abs() / (k.value() * k.value());
                        worst = worst.max(rel);
                        if rel > 1e-10 {
                            passed = false;
                            detail.push_str(&format!("{scheme} k={k} kh={kh}: {rel:.2e}; "));
                        }
                    }
                    Err(e) => {
                        passed = false;
                        detail.push_str(&format!("{scheme} k={k} kh={kh}: {e}; "));
                    }
                }
            }
        }
    }
    if passed {
        detail = format!("root residual <= 1e-10 k^2 on the grid (worst {worst:.2e})");
    }
    CriterionResult {
        id: 6,
        name: "dispersion-free root",
        passed,
        detail,
    }
}

fn substrate_noise(seed: u64, i: usize) -> f64 {
    let mut z = seed
        .wrapping_add(i as u64)
        .wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z ^= z >> 30;
    z = z.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^= z >> 27;
    (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}

/// Criterion 7: DST round trip to 1e-12 absolute, discrete Parseval to 1e-12 relative,
/// and the fast path within 1e-12 of the direct sums.
pub fn criterion_7() -> CriterionResult {
    let mut passed = true;
    let mut detail = String::new();

    let mut n = 4usize;
    while n <= 1024 {
        let grid = GridSpec::new(n).expect("valid");
        let values = (0..grid.interior_len())
            .map(|i| substrate_noise(3, i))
            .collect();
        let g = GridFunction::new(grid, values).expect("length");
        let s = dst_forward(&g);
        for j in 1..n {
            let back = sine_synthesis(&s, grid.x(j));
            if (back - g.values()[j - 1]).abs() > 1e-12 {
                passed = false;
                detail.push_str(&format!("round trip N={n} j={j}; "));
                break;
            }
        }
        let spectral = weighted_norm(&s, 0).powi(2);
        let physical = g.values().iter().map(|v| v * v).sum::<f64>() / n as f64;
        if (spectral - physical).abs() > 1e-12 * physical {
            passed = false;
            detail.push_str(&format!("parseval N={n}; "));
        }
        n *= 2;
    }

    for n in [162usize, 1024, 4096] {
        let grid = GridSpec::new(n).expect("valid");
        let values = (0..grid.interior_len())
            .map(|i| substrate_noise(5, i))
            .collect();
        let g = GridFunction::new(grid, values).expect("length");
        let fast = dst_forward(&g);
        let direct = dst_forward_direct(&g);
        let mut diff = SineSpectrum::zero(grid);
        for m in 1..n {
            *diff.coeff_mut(m).expect("mode") = fast.coeff(m) - direct.coeff(m);
        }
        let rel = weighted_norm(&diff, 0) / weighted_norm(&direct, 0);
        if rel > 1e-12 {
            passed = false;
            detail.push_str(&format!("fast path N={n}: rel {rel:.2e}; "));
        }
    }

    if passed {
        detail = "round trip, Parseval and fast path all within 1e-12".into();
    }
    CriterionResult {
        id: 7,
        name: "spectral substrate",
        passed,
        detail,
    }
}

/// Criterion 8: at fixed kh the evanescent sub-maximum of psi decreases strictly along
/// increasing k for every df scheme.
pub fn criterion_8() -> CriterionResult {
    let ks: Vec<WaveNumber> = [5u32, 10, 20, 40, 80].iter().map(|&nk| k_of(nk)).collect();
    let mut passed = true;
    let mut detail = String::new();
    for scheme in Scheme::DISPERSION_FREE {
        match sweep_kh_fixed(scheme, 0.5, &ks, None) {
            Ok(entries) => {
                let vals: Vec<f64> = entries
                    .iter()
                    .map(|e| e.evanescent_max.unwrap_or(f64::NAN))
                    .collect();
                let strictly_decreasing = vals.windows(2).all(|w| w[1] < w[0]);
                if !strictly_decreasing {
                    passed = false;
                }
                detail.push_str(&format!(
                    "{scheme}: {} ({strictly_decreasing}); ",
                    vals.iter()
                        .map(|v| format!("{v:.2e}"))
                        .collect::<Vec<_>>()
                        .join(" > ")
                ));
            }
            Err(e) => {
                passed = false;
                detail.push_str(&format!("{scheme}: {e}; "));
            }
        }
    }
    if passed {
        detail = format!("evanescent maxima strictly decrease at kh = 0.5: {detail}");
    }
    CriterionResult {
        id: 8,
        name: "evanescent behavior",
        passed,
        detail,
    }
}

/// Criterion 9: out-of-scope features are absent by design; nothing to measure.
pub fn criterion_9() -> CriterionResult {
    CriterionResult {
        id: 9,
        name: "out-of-scope features",
        passed: true,
        detail:
            "2D/3D extensions and rigorous order proofs are out of scope; no check depends on them"
                .into(),
    }
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}
