//! The experiment matrix: sources, spectrally computed error norms, and the
//! three sweep families (h-refinement, k-doubling ladder, fixed kh).

use crate::error::{Error, Result};
use crate::schemes::{Scheme, WaveNumber};
use crate::solver::{exact_solution_spectrum, solve_spectral};
use crate::spectral::{weighted_norm, xi, GridFunction, GridSpec, SineSpectrum};
use crate::symbol_analysis::{
    error_bounds, fit_k_exponent, profile, ExponentFit, SymbolErrorProfile,
};

/// Experiments keep kh at or below this; the schemes stop being meaningful
/// beyond it.
pub const KH_MAX: f64 = 1.0;

/// Default kh range for error-vs-kh sweeps, declared rather than inferred.
pub const DEFAULT_KH_MIN: f64 = 0.0078125; // 2^-7
pub const DEFAULT_KH_MAX: f64 = 1.0;

/// A row whose relative L2 error sits below this is flagged as sitting on the
/// double-precision round-off floor.
pub const FLOOR_REL: f64 = 1e-12;

/// Band-limited source: a sparse list of sine modes with amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpec {
    modes: Vec<(usize, f64)>,
}

impl SourceSpec {
    /// Modes must have n >= 1 and distinct frequencies; they are kept sorted.
    pub fn new(mut modes: Vec<(usize, f64)>) -> Result<Self> {
        modes.sort_by_key(|(n, _)| *n);
        for w in modes.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate source mode {}",
                    w[0].0
                )));
            }
        }
        if modes.first().is_some_and(|(n, _)| *n == 0) {
            return Err(Error::InvalidArgument("source modes start at n = 1".into()));
        }
        Ok(Self { modes })
    }

    /// The k-dependent source sin(n_k pi x) for k = n_k pi + 1.
    pub fn monochromatic(k: WaveNumber) -> Result<Self> {
        if k.offset() != 1.0 || k.pi_multiple() == 0 {
            return Err(Error::InvalidArgument(format!(
                "monochromatic source needs k = n_k*pi + 1, got {k}"
            )));
        }
        Self::new(vec![(k.pi_multiple() as usize, 1.0)])
    }

    /// The fixed mixed source sum_j sin(2^j * 5 pi x), j = 0..5.
    pub fn mixed() -> Self {
        Self {
            modes: (0..6).map(|j| (5 << j, 1.0)).collect(),
        }
    }

    pub fn modes(&self) -> &[(usize, f64)] {
        &self.modes
    }

    pub fn max_mode(&self) -> usize {
        self.modes.last().map_or(0, |(n, _)| *n)
    }

    /// All mode frequencies must be strictly below N.
    pub fn check_band_limit(&self, grid: GridSpec) -> Result<()> {
        let top = self.max_mode();
        if top >= grid.n() {
            return Err(Error::BandLimit {
                mode: top,
                n: grid.n(),
            });
        }
        Ok(())
    }

    /// Exact sine spectrum on the grid.
    pub fn spectrum(&self, grid: GridSpec) -> Result<SineSpectrum> {
        self.check_band_limit(grid)?;
        let mut s = SineSpectrum::zero(grid);
        for &(mode, amp) in &self.modes {
            *s.coeff_mut(mode)? = amp;
        }
        Ok(s)
    }

    /// Exact samples at the interior grid points.
    pub fn sample(&self, grid: GridSpec) -> Result<GridFunction> {
        self.check_band_limit(grid)?;
        let n = grid.n();
        let mut values = vec![0.0; grid.interior_len()];
        for &(mode, amp) in &self.modes {
            for (i, v) in values.iter_mut().enumerate() {
                *v += amp * crate::spectral::sin_pi_ratio(mode * (i + 1), n);
            }
        }
        GridFunction::new(grid, values)
    }
}

/// Per-mode and aggregate error norms, computed in the frequency domain.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub l2_error: f64,
    pub h1_semi_error: f64,
    /// (n, |u_n - u^h_n|) for every mode.
    pub per_mode: Vec<(usize, f64)>,
}

impl ErrorReport {
    pub fn between(exact: &SineSpectrum, discrete: &SineSpectrum) -> Result<Self> {
        if exact.grid() != discrete.grid() {
            return Err(Error::InvalidArgument(
                "error norms need a common grid".into(),
            ));
        }
        let mut l2_sq = 0.0;
        let mut h1_sq = 0.0;
        let mut per_mode = Vec::with_capacity(exact.coeffs().len());
        for (i, (a, b)) in exact.coeffs().iter().zip(discrete.coeffs()).enumerate() {
            let n = i + 1;
            let d = (a - b).abs();
            l2_sq += d * d;
            h1_sq += xi(n) * xi(n) * d * d;
            per_mode.push((n, d));
        }
        Ok(Self {
            l2_error: (0.5 * l2_sq).sqrt(),
            h1_semi_error: (0.5 * h1_sq).sqrt(),
            per_mode,
        })
    }
}

/// One (scheme, k, N) experiment outcome.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub scheme: Scheme,
    pub k: WaveNumber,
    pub n: usize,
    pub kh: f64,
    pub l2_error: f64,
    pub h1_semi_error: f64,
    /// l2 / (k^2 h^2) for cls, l2 / (k^(m-1) h^m) for the df schemes.
    pub l2_scaled: f64,
    /// h1 / (k^3 h^2) for cls, h1 / (k^m h^m) for the df schemes.
    pub h1_scaled: f64,
    pub bound_l2: f64,
    pub bound_h1: f64,
    pub floor: bool,
}

/// Smallest even integer >= x, at least 4.
pub fn even_ceil(x: f64) -> usize {
    let mut n = x.ceil() as usize;
    n += n % 2;
    n.max(4)
}

/// Solve one case on the spectral path and assemble the full row.
pub fn run_case(
    scheme: Scheme,
    k: WaveNumber,
    n: usize,
    source: &SourceSpec,
    p: i32,
) -> Result<SweepRow> {
    let grid = GridSpec::new(n)?;
    if !grid.is_even() {
        return Err(Error::InvalidGrid(format!(
            "experiments need even N, got {n}"
        )));
    }
    let kv = k.value();
    let kh = kv * grid.h();
    if kh > KH_MAX {
        return Err(Error::InvalidGrid(format!(
            "kh = {kh} exceeds the admissible {KH_MAX}"
        )));
    }
    let f_hat = source.spectrum(grid)?;
    let sol = solve_spectral(scheme, k, grid, &f_hat)?;
    let exact = exact_solution_spectrum(source, k, grid)?;
    let report = ErrorReport::between(&exact, sol.spectrum())?;
    let bounds = error_bounds(scheme, k, grid, p, &f_hat)?;

    let m = scheme.order();
    let h = grid.h();
    let (l2_scale, h1_scale) = if scheme == Scheme::Cls {
        (kv * kv * h * h, kv.powi(3) * h * h)
    } else {
        (kv.powi(m - 1) * h.powi(m), kv.powi(m) * h.powi(m))
    };

    let floor = report.l2_error < FLOOR_REL * weighted_norm(&exact, 0);
    Ok(SweepRow {
        scheme,
        k,
        n,
        kh,
        l2_error: report.l2_error,
        h1_semi_error: report.h1_semi_error,
        l2_scaled: report.l2_error / l2_scale,
        h1_scaled: report.h1_semi_error / h1_scale,
        bound_l2: bounds.l2_bound,
        bound_h1: bounds.h1_bound,
        floor,
    })
}

/// Ratio form of the round-off-floor rule: each sweep step must shrink the
/// L2 error by at least 2^(m/2). On the ladder the k-doubling eats part of
/// the h-quartering gain (the weakest healthy law, k^m h^m, still drops by
/// 2^m per rung), so the half-order gate separates floor from signal for
/// every scheme.
fn flag_stalled_rows(rows: &mut [SweepRow], m: i32) {
    let need = (2.0f64).powf(-(m as f64) / 2.0);
    for i in 1..rows.len() {
        if rows[i].l2_error > rows[i - 1].l2_error * need {
            rows[i].floor = true;
        }
    }
}

/// Run one case per N at fixed k; odd N is rounded up to the next even value.
pub fn sweep_h_refinement(
    scheme: Scheme,
    k: WaveNumber,
    n_list: &[usize],
    source: &SourceSpec,
    p: i32,
) -> Result<Vec<SweepRow>> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("empty N list".into()));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        rows.push(run_case(scheme, k, n + n % 2, source, p)?);
    }
    for i in 1..rows.len() {
        let d = (rows[i].n as f64 / rows[i - 1].n as f64).log2();
        if d > 0.0 {
            let need = (2.0f64).powf(-d * scheme.order() as f64 / 2.0);
            if rows[i].l2_error > rows[i - 1].l2_error * need {
                rows[i].floor = true;
            }
        }
    }
    Ok(rows)
}

/// Which source family a ladder uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    /// sin(n_k pi x), following k up the ladder.
    Monochromatic,
    /// The fixed mixed source; needs N > 160 on every rung.
    Mixed,
}

/// The k-doubles/N-quadruples ladder: k_j = (2^j n_k) pi + offset,
/// N_j = 4^j N_0.
pub fn sweep_ladder(
    scheme: Scheme,
    k0: WaveNumber,
    n0: usize,
    steps: usize,
    source: SourceKind,
    p: i32,
) -> Result<Vec<SweepRow>> {
    if k0.pi_multiple() == 0 {
        return Err(Error::InvalidArgument(
            "ladder needs k of the form n_k*pi + offset".into(),
        ));
    }
    if steps < 1 {
        return Err(Error::InvalidArgument(
            "ladder needs at least one rung".into(),
        ));
    }
    let n0 = n0 + n0 % 2;
    let mut rows = Vec::with_capacity(steps);
    for j in 0..steps {
        let k = WaveNumber::new(k0.pi_multiple() << j, k0.offset())?;
        let n = n0 << (2 * j);
        let src = match source {
            SourceKind::Monochromatic => SourceSpec::monochromatic(k)?,
            SourceKind::Mixed => SourceSpec::mixed(),
        };
        rows.push(run_case(scheme, k, n, &src, p)?);
    }
    flag_stalled_rows(&mut rows, scheme.order());
    Ok(rows)
}

/// Fit the k-exponent of both error norms on ladder rows, dropping everything
/// from the first floor-flagged row on.
pub fn ladder_exponents(rows: &[SweepRow]) -> Result<(ExponentFit, ExponentFit)> {
    let cut = rows.iter().position(|r| r.floor).unwrap_or(rows.len());
    let live = &rows[..cut];
    let m = live.first().map(|r| r.scheme.order()).unwrap_or(0);
    let tuples = |f: fn(&SweepRow) -> f64| -> Result<Vec<(WaveNumber, GridSpec, f64)>> {
        live.iter()
            .map(|r| Ok((r.k, GridSpec::new(r.n)?, f(r))))
            .collect()
    };
    let l2 = fit_k_exponent(m, &tuples(|r| r.l2_error)?)?;
    let h1 = fit_k_exponent(m, &tuples(|r| r.h1_semi_error)?)?;
    Ok((l2, h1))
}

/// One entry of a fixed-kh family: the symbol profile at k with N chosen so
/// k/N is just below the requested kh.
#[derive(Debug, Clone)]
pub struct KhFixedEntry {
    pub k: WaveNumber,
    pub n: usize,
    pub kh: f64,
    pub profile: SymbolErrorProfile,
    /// max over evanescent frequencies xi_n > k
    pub evanescent_max: Option<f64>,
    /// max over propagating frequencies xi_n < k
    pub propagating_max: Option<f64>,
}

/// Symbol profiles along increasing k with kh held (approximately) fixed.
pub fn sweep_kh_fixed(
    scheme: Scheme,
    kh: f64,
    ks: &[WaveNumber],
    p_override: Option<i32>,
) -> Result<Vec<KhFixedEntry>> {
    if !(kh > 0.0 && kh <= KH_MAX) {
        return Err(Error::InvalidArgument(format!(
            "kh = {kh} outside (0, {KH_MAX}]"
        )));
    }
    let p = p_override.unwrap_or(scheme.default_p());
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let n = even_ceil(k.value() / kh);
        let grid = GridSpec::new(n)?;
        let prof = profile(scheme, k, grid, p)?;
        out.push(KhFixedEntry {
            k,
            n,
            kh: k.value() * grid.h(),
            evanescent_max: prof.evanescent_max(),
            propagating_max: prof.propagating_max(),
            profile: prof,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn k(nk: u32) -> WaveNumber {
        WaveNumber::new(nk, 1.0).unwrap()
    }

    #[test]
    fn monochromatic_source_modes() {
        assert_eq!(
            SourceSpec::monochromatic(k(5)).unwrap().modes(),
            &[(5, 1.0)]
        );
        assert_eq!(
            SourceSpec::monochromatic(k(80)).unwrap().modes(),
            &[(80, 1.0)]
        );
        let bad = WaveNumber::new(5, 0.5).unwrap();
        assert!(SourceSpec::monochromatic(bad).is_err());
    }

    #[test]
    fn monochromatic_seminorm_is_power_of_mode_frequency() {
        // |f|_{H^p} = (n_k pi)^p / sqrt(2)
        let g = GridSpec::new(64).unwrap();
        let f = SourceSpec::monochromatic(k(5))
            .unwrap()
            .spectrum(g)
            .unwrap();
        for p in [0, 1, 2] {
            assert_relative_eq!(
                weighted_norm(&f, p),
                (5.0 * PI).powi(p) / 2.0f64.sqrt(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn mixed_source_shape() {
        let src = SourceSpec::mixed();
        assert_eq!(
            src.modes(),
            &[
                (5, 1.0),
                (10, 1.0),
                (20, 1.0),
                (40, 1.0),
                (80, 1.0),
                (160, 1.0)
            ]
        );
        assert_eq!(src.max_mode(), 160);
        // smallest usable even N
        assert!(src.check_band_limit(GridSpec::new(162).unwrap()).is_ok());
        assert!(src.check_band_limit(GridSpec::new(160).unwrap()).is_err());
        // ||f||_{L2}^2 = 6/2 = 3
        let g = GridSpec::new(512).unwrap();
        let f = src.spectrum(g).unwrap();
        assert_relative_eq!(weighted_norm(&f, 0).powi(2), 3.0, max_relative = 1e-14);
    }

    #[test]
    fn source_rejects_duplicates_and_zero_mode() {
        assert!(SourceSpec::new(vec![(3, 1.0), (3, 2.0)]).is_err());
        assert!(SourceSpec::new(vec![(0, 1.0)]).is_err());
    }

    #[test]
    fn error_report_parseval_structure() {
        let g = GridSpec::new(8).unwrap();
        let a = SineSpectrum::new(g, vec![1.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let b = SineSpectrum::new(g, vec![0.8, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let rep = ErrorReport::between(&a, &b).unwrap();
        let l2_sq: f64 = rep.per_mode.iter().map(|(_, d)| d * d).sum::<f64>() / 2.0;
        assert_relative_eq!(rep.l2_error * rep.l2_error, l2_sq, max_relative = 1e-15);
        let h1_sq: f64 = rep
            .per_mode
            .iter()
            .map(|(n, d)| (xi(*n) * d).powi(2))
            .sum::<f64>()
            / 2.0;
        assert_relative_eq!(
            rep.h1_semi_error * rep.h1_semi_error,
            h1_sq,
            max_relative = 1e-15
        );
    }

    #[test]
    fn run_case_bound_holds_and_kh_consistent() {
        let row = run_case(
            Scheme::Cls,
            k(5),
            64,
            &SourceSpec::monochromatic(k(5)).unwrap(),
            0,
        )
        .unwrap();
        assert_relative_eq!(row.kh, k(5).value() / 64.0, max_relative = 1e-15);
        assert!(row.l2_error <= row.bound_l2 * (1.0 + 1e-10));
        assert!(row.h1_semi_error <= row.bound_h1 * (1.0 + 1e-10));
        assert!(!row.floor);
    }

    #[test]
    fn run_case_rejects_odd_or_coarse_grids() {
        let src = SourceSpec::monochromatic(k(5)).unwrap();
        assert!(run_case(Scheme::Cls, k(5), 65, &src, 0).is_err());
        assert!(run_case(Scheme::Cls, k(5), 16, &src, 0).is_err()); // kh > 1
    }

    #[test]
    fn href_rounds_odd_n_up() {
        let src = SourceSpec::monochromatic(k(5)).unwrap();
        let rows = sweep_h_refinement(Scheme::Cls, k(5), &[63, 128], &src, 0).unwrap();
        assert_eq!(rows[0].n, 64);
        assert_eq!(rows[1].n, 128);
    }

    #[test]
    fn href_zero_source_gives_zero_errors() {
        let src = SourceSpec::new(vec![]).unwrap();
        let rows = sweep_h_refinement(Scheme::Cls, k(5), &[64, 128], &src, 0).unwrap();
        assert!(rows
            .iter()
            .all(|r| r.l2_error == 0.0 && r.h1_semi_error == 0.0));
    }

    #[test]
    fn ladder_structure_and_exponents_cls() {
        let rows = sweep_ladder(Scheme::Cls, k(5), 84, 5, SourceKind::Monochromatic, 0).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[4].k.pi_multiple(), 80);
        assert_eq!(rows[4].n, 84 * 256);
        let (l2, h1) = ladder_exponents(&rows).unwrap();
        assert!((l2.alpha - 2.0).abs() < 0.2, "alpha_l2 = {}", l2.alpha);
        assert!((h1.alpha - 3.0).abs() < 0.2, "alpha_h1 = {}", h1.alpha);
    }

    #[test]
    fn ladder_scaled_column_tracks_law() {
        // cls l2_scaled = l2 / (k^2 h^2) should be near-constant on the ladder
        let rows = sweep_ladder(Scheme::Cls, k(5), 84, 4, SourceKind::Monochromatic, 0).unwrap();
        let vals: Vec<f64> = rows.iter().map(|r| r.l2_scaled).collect();
        let spread = vals.iter().cloned().fold(f64::MIN, f64::max)
            / vals.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1.3, "spread {spread}");
    }

    #[test]
    fn kh_fixed_family_shapes() {
        let ks: Vec<WaveNumber> = [5u32, 10, 20].iter().map(|&n| k(n)).collect();
        let fam = sweep_kh_fixed(Scheme::Df2, 0.5, &ks, None).unwrap();
        assert_eq!(fam.len(), 3);
        for e in &fam {
            assert!(e.kh <= 0.5 + 1e-12);
            assert!(e.n % 2 == 0);
            assert!(e.evanescent_max.is_some());
            assert!(e.propagating_max.is_some());
            // profile is the plain profile at default p
            let g = GridSpec::new(e.n).unwrap();
            let want = profile(Scheme::Df2, e.k, g, Scheme::Df2.default_p()).unwrap();
            assert_eq!(e.profile.max_value, want.max_value);
        }
    }

    #[test]
    fn even_ceil_values() {
        assert_eq!(even_ceil(16.7), 18);
        assert_eq!(even_ceil(16.0), 16);
        assert_eq!(even_ceil(161.0), 162);
        assert_eq!(even_ceil(1.0), 4);
    }
}
