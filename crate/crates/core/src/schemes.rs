//! The four finite-difference schemes: symbols, stencils, and right-hand-side
//! operators.
//!
//! All schemes discretize u'' + k^2 u = f with homogeneous Dirichlet data.
//! `cls` is the classical centered scheme; `df2`, `df4`, `df6` are the
//! dispersion-free schemes of order 2, 4, 6. The df schemes share one left-hand
//! operator built on the modified wavenumber and differ only on the right-hand
//! side.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::experiments::SourceSpec;
use crate::spectral::{GridFunction, GridSpec};

/// Relative guard for the continuous and discrete resonance checks.
/// k not in pi*Z keeps exact zeros impossible; this catches pathological input.
pub const RESONANCE_GUARD: f64 = 1e-12;

/// Relative guard below which the modified wavenumber is considered degenerate.
const KTILDE_GUARD: f64 = 1e-14;

/// Wavenumber k = n_k * pi + offset, kept in split form so the hypothesis
/// k not in pi*Z is checked structurally rather than by float comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumber {
    pi_multiple: u32,
    offset: f64,
}

impl WaveNumber {
    pub fn new(pi_multiple: u32, offset: f64) -> Result<Self> {
        if !offset.is_finite() || offset % PI == 0.0 {
            return Err(Error::InvalidWaveNumber(format!(
                "offset {offset} puts k = {pi_multiple}*pi + offset in pi*Z"
            )));
        }
        let k = Self {
            pi_multiple,
            offset,
        };
        if k.value() <= 0.0 {
            return Err(Error::InvalidWaveNumber(format!(
                "k = {} is not positive",
                k.value()
            )));
        }
        Ok(k)
    }

    pub fn value(&self) -> f64 {
        self.pi_multiple as f64 * PI + self.offset
    }

    pub fn pi_multiple(&self) -> u32 {
        self.pi_multiple
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Canonical text form, e.g. "5pi+1" or "16.5".
    pub fn spec_string(&self) -> String {
        if self.pi_multiple == 0 {
            format!("{}", self.offset)
        } else {
            format!("{}pi+{}", self.pi_multiple, self.offset)
        }
    }
}

impl fmt::Display for WaveNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// Scheme identifier with its formal order in h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Cls,
    Df2,
    Df4,
    Df6,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Cls, Scheme::Df2, Scheme::Df4, Scheme::Df6];
    pub const DISPERSION_FREE: [Scheme; 3] = [Scheme::Df2, Scheme::Df4, Scheme::Df6];

    /// Formal order m in h.
    pub fn order(self) -> i32 {
        match self {
            Scheme::Cls | Scheme::Df2 => 2,
            Scheme::Df4 => 4,
            Scheme::Df6 => 6,
        }
    }

    pub fn is_dispersion_free(self) -> bool {
        !matches!(self, Scheme::Cls)
    }

    /// Default Sobolev index p = m - 2 used by the error functional.
    pub fn default_p(self) -> i32 {
        self.order() - 2
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Cls => "cls",
            Scheme::Df2 => "df2",
            Scheme::Df4 => "df4",
            Scheme::Df6 => "df6",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cls" => Ok(Scheme::Cls),
            "df2" => Ok(Scheme::Df2),
            "df4" => Ok(Scheme::Df4),
            "df6" => Ok(Scheme::Df6),
            other => Err(Error::InvalidArgument(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Constant-coefficient symmetric 3-point stencil (sub == sup).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagonalStencil {
    pub sub: f64,
    pub diag: f64,
    pub sup: f64,
}

fn modified_wavenumber_value(k: f64, h: f64) -> f64 {
    (2.0 / h) * (k * h / 2.0).sin()
}

/// Modified wavenumber k~ = (2/h) sin(kh/2).
pub fn modified_wavenumber(k: WaveNumber, grid: GridSpec) -> Result<f64> {
    let kv = k.value();
    let kh = kv * grid.h();
    if kh >= 2.0 * PI {
        return Err(Error::DegenerateModifiedWavenumber { kh });
    }
    let kt = modified_wavenumber_value(kv, grid.h());
    if kt.abs() < KTILDE_GUARD * kv {
        return Err(Error::DegenerateModifiedWavenumber { kh });
    }
    Ok(kt)
}

/// Continuous inverse symbol 1/(k^2 - xi^2).
pub fn continuous_inverse_symbol(k: WaveNumber, xi: f64) -> Result<f64> {
    let kv = k.value();
    let denom = kv * kv - xi * xi;
    if denom.abs() < RESONANCE_GUARD * kv * kv {
        return Err(Error::Resonance { k: kv, xi });
    }
    Ok(1.0 / denom)
}

/// Squared discrete frequency (2/h)^2 sin^2(xi h / 2), the action of the
/// centered second difference on sin(xi x).
fn discrete_freq_sq(xi: f64, h: f64) -> f64 {
    let t = (2.0 / h) * (xi * h / 2.0).sin();
    t * t
}

/// Left-hand-side symbol of the scheme at frequency xi.
///
/// cls: k^2 - (4/h^2) sin^2(xi h/2);
/// df:  k^2 - (k^2/k~^2) (4/h^2) sin^2(xi h/2), which vanishes at xi = k.
pub fn left_symbol(scheme: Scheme, k: WaveNumber, grid: GridSpec, xi: f64) -> Result<f64> {
    let kv = k.value();
    let s = discrete_freq_sq(xi, grid.h());
    match scheme {
        Scheme::Cls => Ok(kv * kv - s),
        _ => {
            let kt = modified_wavenumber(k, grid)?;
            Ok(kv * kv - (kv * kv / (kt * kt)) * s)
        }
    }
}

/// Right-hand-side symbol of the scheme at frequency xi.
///
/// cls, df2: 1;
/// df4: 1 - xi^2 (1/k~^2 - 1/k^2);
/// df6: adds xi^4 [1/k^4 + (h^2/12 - 1/k^2)/k~^2], the sine transform of the
/// df6 right-hand operator (the f'''' coefficient carries the 1/k^4 term).
pub fn right_symbol(scheme: Scheme, k: WaveNumber, grid: GridSpec, xi: f64) -> Result<f64> {
    match scheme {
        Scheme::Cls | Scheme::Df2 => Ok(1.0),
        Scheme::Df4 => {
            let kt = modified_wavenumber(k, grid)?;
            let kv = k.value();
            Ok(1.0 - xi * xi * (1.0 / (kt * kt) - 1.0 / (kv * kv)))
        }
        Scheme::Df6 => {
            let kt = modified_wavenumber(k, grid)?;
            let kv = k.value();
            let h = grid.h();
            let r4 = 1.0 - xi * xi * (1.0 / (kt * kt) - 1.0 / (kv * kv));
            let c4 = 1.0 / kv.powi(4) + (h * h / 12.0 - 1.0 / (kv * kv)) / (kt * kt);
            Ok(r4 + xi.powi(4) * c4)
        }
    }
}

/// 3-point stencil of the left-hand operator: (c/h^2, k^2 - 2c/h^2, c/h^2)
/// with c = 1 for cls and c = k^2/k~^2 for the df schemes.
pub fn stencil(scheme: Scheme, k: WaveNumber, grid: GridSpec) -> Result<TridiagonalStencil> {
    let kv = k.value();
    let h = grid.h();
    let c = match scheme {
        Scheme::Cls => 1.0,
        _ => {
            let kt = modified_wavenumber(k, grid)?;
            kv * kv / (kt * kt)
        }
    };
    let off = c / (h * h);
    Ok(TridiagonalStencil {
        sub: off,
        diag: kv * kv - 2.0 * off,
        sup: off,
    })
}

impl TridiagonalStencil {
    /// Apply the stencil to interior values with zero boundary data.
    pub fn apply(&self, g: &GridFunction) -> GridFunction {
        let v = g.values();
        let n = v.len();
        let out = (0..n)
            .map(|i| {
                let left = if i > 0 { v[i - 1] } else { 0.0 };
                let right = if i + 1 < n { v[i + 1] } else { 0.0 };
                self.sub * left + self.diag * v[i] + self.sup * right
            })
            .collect();
        GridFunction::new(g.grid(), out).expect("same grid")
    }
}

/// Grid samples of R^h f for a band-limited source, with the derivatives f''
/// and f'''' taken by exact spectral differentiation of the source modes.
pub fn rhs_operator(
    scheme: Scheme,
    source: &SourceSpec,
    k: WaveNumber,
    grid: GridSpec,
) -> Result<GridFunction> {
    source.check_band_limit(grid)?;
    let n = grid.n();
    let kv = k.value();
    let h = grid.h();

    // physical-space coefficients of the identity, f'' and f'''' terms
    let (c2, c4) = match scheme {
        Scheme::Cls | Scheme::Df2 => (0.0, 0.0),
        Scheme::Df4 => {
            let kt = modified_wavenumber(k, grid)?;
            (1.0 / (kt * kt) - 1.0 / (kv * kv), 0.0)
        }
        Scheme::Df6 => {
            let kt = modified_wavenumber(k, grid)?;
            let c2 = 1.0 / (kt * kt) - 1.0 / (kv * kv);
            let c4 = 1.0 / kv.powi(4) + (h * h / 12.0 - 1.0 / (kv * kv)) / (kt * kt);
            (c2, c4)
        }
    };

    let mut values = vec![0.0; grid.interior_len()];
    for &(mode, amp) in source.modes() {
        let xi2 = crate::spectral::xi(mode).powi(2);
        // f + c2 f'' + c4 f'''' acts on sin(xi x) as (1 - c2 xi^2 + c4 xi^4)
        let weight = amp * (1.0 - c2 * xi2 + c4 * xi2 * xi2);
        for (i, v) in values.iter_mut().enumerate() {
            *v += weight * crate::spectral::sin_pi_ratio(mode * (i + 1), n);
        }
    }
    GridFunction::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid(n: usize) -> GridSpec {
        GridSpec::new(n).unwrap()
    }

    #[test]
    fn wavenumber_rejects_pi_multiples() {
        assert!(WaveNumber::new(3, 0.0).is_err()); // 3pi
        assert!(WaveNumber::new(0, PI).is_err()); // pi itself
        assert!(WaveNumber::new(0, 2.0 * PI).is_err());
        assert!(WaveNumber::new(0, 0.0).is_err());
        assert!(WaveNumber::new(5, 1.0).is_ok());
        assert!(WaveNumber::new(0, 1.0).is_ok());
    }

    #[test]
    fn wavenumber_value_and_display() {
        let k = WaveNumber::new(5, 1.0).unwrap();
        assert_relative_eq!(k.value(), 5.0 * PI + 1.0, max_relative = 1e-16);
        assert_eq!(k.spec_string(), "5pi+1");
        assert_eq!(WaveNumber::new(0, 16.5).unwrap().spec_string(), "16.5");
    }

    #[test]
    fn scheme_orders() {
        assert_eq!(Scheme::Cls.order(), 2);
        assert_eq!(Scheme::Df2.order(), 2);
        assert_eq!(Scheme::Df4.order(), 4);
        assert_eq!(Scheme::Df6.order(), 6);
        assert_eq!(Scheme::Df6.default_p(), 4);
        assert_eq!("df4".parse::<Scheme>().unwrap(), Scheme::Df4);
        assert!("df8".parse::<Scheme>().is_err());
    }

    #[test]
    fn modified_wavenumber_small_kh_expansion() {
        // k~ = k (1 - (kh)^2/24 + O((kh)^4))
        let k = WaveNumber::new(0, 1.0).unwrap();
        let g = grid(1000); // kh = 1e-3
        let kt = modified_wavenumber(k, g).unwrap();
        let kh = k.value() * g.h();
        assert_relative_eq!(kt, k.value() * (1.0 - kh * kh / 24.0), max_relative = 1e-9);
    }

    #[test]
    fn modified_wavenumber_closed_values() {
        // kh = pi gives k~ = 2/h; k = pi itself is outside the domain type,
        // so exercise the raw formula.
        assert_relative_eq!(
            modified_wavenumber_value(PI, 0.25),
            8.0 * (PI / 8.0).sin(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            modified_wavenumber_value(PI, 0.25),
            3.061_467_458_920_718,
            max_relative = 1e-15
        );
        let h = 1.0 / 6.0;
        assert_relative_eq!(
            modified_wavenumber_value(PI / h, h),
            2.0 / h,
            max_relative = 1e-15
        );
    }

    #[test]
    fn modified_wavenumber_degenerate_at_2pi() {
        // kh >= 2pi aliases k~ to zero
        let k = WaveNumber::new(8, 1.0).unwrap(); // k ~ 26.1
        let g = grid(4); // kh ~ 6.5 > 2pi
        assert!(matches!(
            modified_wavenumber(k, g),
            Err(Error::DegenerateModifiedWavenumber { .. })
        ));
    }

    #[test]
    fn continuous_symbol_values() {
        let k = WaveNumber::new(5, 1.0).unwrap();
        assert_relative_eq!(
            continuous_inverse_symbol(k, 5.0 * PI).unwrap(),
            1.0 / (10.0 * PI + 1.0),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            continuous_inverse_symbol(k, 0.0).unwrap(),
            1.0 / (k.value() * k.value()),
            max_relative = 1e-15
        );
        let k10 = WaveNumber::new(10, 1.0).unwrap();
        let want = 1.0 / ((10.0 * PI + 1.0).powi(2) - 400.0 * PI * PI);
        assert_relative_eq!(
            continuous_inverse_symbol(k10, 20.0 * PI).unwrap(),
            want,
            max_relative = 1e-14
        );
    }

    #[test]
    fn continuous_symbol_resonance_guard() {
        let k = WaveNumber::new(5, 1.0).unwrap();
        assert!(matches!(
            continuous_inverse_symbol(k, k.value()),
            Err(Error::Resonance { .. })
        ));
    }

    #[test]
    fn left_symbol_classical_value() {
        let k = WaveNumber::new(0, 1.0).unwrap();
        let got = left_symbol(Scheme::Cls, k, grid(4), PI).unwrap();
        let want = 1.0 - 64.0 * (PI / 8.0).sin().powi(2);
        assert_relative_eq!(got, want, max_relative = 1e-14);
        assert_relative_eq!(want, -8.372_583_002_030_48, max_relative = 1e-14);
    }

    #[test]
    fn left_symbol_dispersion_free_root() {
        // df symbol vanishes at xi = k
        for nk in [5u32, 20, 80] {
            let k = WaveNumber::new(nk, 1.0).unwrap();
            let g = grid((4.0 * k.value()).ceil() as usize);
            let v = left_symbol(Scheme::Df2, k, g, k.value()).unwrap();
            assert!(v.abs() <= 1e-10 * k.value() * k.value(), "residual {v}");
        }
    }

    #[test]
    fn left_symbol_h_consistency_order_two() {
        // fixed xi: cls symbol -> k^2 - xi^2 with O(h^2); Richardson slope 2
        let k = WaveNumber::new(2, 1.0).unwrap();
        let xi = 5.0 * PI;
        let exact = k.value() * k.value() - xi * xi;
        let e = |n: usize| (left_symbol(Scheme::Cls, k, grid(n), xi).unwrap() - exact).abs();
        let slope = (e(64) / e(128)).log2();
        assert!((slope - 2.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn right_symbol_values() {
        let k = WaveNumber::new(5, 1.0).unwrap();
        let g = grid(32);
        assert_eq!(right_symbol(Scheme::Cls, k, g, 3.0 * PI).unwrap(), 1.0);
        assert_eq!(right_symbol(Scheme::Df2, k, g, 11.0 * PI).unwrap(), 1.0);
        assert_relative_eq!(
            right_symbol(Scheme::Df4, k, g, 0.0).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        let got = right_symbol(Scheme::Df4, k, g, 16.0 * PI).unwrap();
        assert_relative_eq!(got, 0.791_549_936_938_339_4, max_relative = 1e-13);
    }

    #[test]
    fn stencil_classical_n4() {
        let k = WaveNumber::new(0, 1.0).unwrap();
        let st = stencil(Scheme::Cls, k, grid(4)).unwrap();
        assert_eq!(st.sub, 16.0);
        assert_eq!(st.sup, 16.0);
        assert_relative_eq!(st.diag, 1.0 - 32.0, max_relative = 1e-15);
    }

    #[test]
    fn stencil_df_approaches_classical_for_small_kh() {
        let k = WaveNumber::new(0, 1.0).unwrap();
        let g = grid(10_000); // kh = 1e-4
        let st_df = stencil(Scheme::Df2, k, g).unwrap();
        let st_cls = stencil(Scheme::Cls, k, g).unwrap();
        assert_relative_eq!(st_df.sub, st_cls.sub, max_relative = 1e-7);
        assert_relative_eq!(st_df.diag, st_cls.diag, max_relative = 1e-7);
    }

    #[test]
    fn stencil_applies_as_left_symbol_on_sine_mode() {
        // sin(2 pi x) sampled on N=8 is an eigenvector of the stencil with
        // eigenvalue left_symbol(xi_2)
        let k = WaveNumber::new(0, 1.0).unwrap();
        let g = grid(8);
        let st = stencil(Scheme::Cls, k, g).unwrap();
        let samples = GridFunction::from_fn(g, |x| (2.0 * PI * x).sin());
        let out = st.apply(&samples);
        let lambda = left_symbol(Scheme::Cls, k, g, 2.0 * PI).unwrap();
        for (o, s) in out.values().iter().zip(samples.values()) {
            assert_relative_eq!(*o, lambda * s, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn rhs_operator_identity_for_cls_df2() {
        let k = WaveNumber::new(5, 1.0).unwrap();
        let g = grid(64);
        let src = SourceSpec::new(vec![(5, 1.0)]).unwrap();
        let rhs = rhs_operator(Scheme::Cls, &src, k, g).unwrap();
        let f = src.sample(g).unwrap();
        for (a, b) in rhs.values().iter().zip(f.values()) {
            assert_relative_eq!(a, b, max_relative = 1e-15, epsilon = 1e-15);
        }
    }

    #[test]
    fn rhs_operator_monochromatic_eigenfunction_df4() {
        let k = WaveNumber::new(5, 1.0).unwrap();
        let g = grid(64);
        let src = SourceSpec::new(vec![(7, 1.0)]).unwrap();
        let rhs = rhs_operator(Scheme::Df4, &src, k, g).unwrap();
        let f = src.sample(g).unwrap();
        let r = right_symbol(Scheme::Df4, k, g, 7.0 * PI).unwrap();
        for (a, b) in rhs.values().iter().zip(f.values()) {
            assert_relative_eq!(*a, r * b, max_relative = 1e-12, epsilon = 1e-14);
        }
    }

    #[test]
    fn rhs_operator_band_limit_rejected() {
        let k = WaveNumber::new(5, 1.0).unwrap();
        let src = SourceSpec::new(vec![(64, 1.0)]).unwrap();
        assert!(matches!(
            rhs_operator(Scheme::Cls, &src, k, grid(64)),
            Err(Error::BandLimit { mode: 64, n: 64 })
        ));
    }
}
