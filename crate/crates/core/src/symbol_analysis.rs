//! The frequency-wise symbol error functional, its profiles over the grid
//! frequencies, the resulting error bounds, and k-exponent fitting.

use crate::error::{Error, Result};
use crate::schemes::{
    continuous_inverse_symbol, left_symbol, right_symbol, Scheme, WaveNumber, RESONANCE_GUARD,
};
use crate::spectral::{weighted_norm, xi, GridSpec, SineSpectrum};

/// psi_p over all grid frequencies of one (scheme, k, N) configuration.
#[derive(Debug, Clone)]
pub struct SymbolErrorProfile {
    pub scheme: Scheme,
    pub k: WaveNumber,
    pub grid: GridSpec,
    pub p: i32,
    /// (xi_n, psi_p(xi_n)) for n = 1..N-1.
    pub values: Vec<(f64, f64)>,
    pub max_value: f64,
    /// Smallest n attaining the maximum.
    pub argmax_n: usize,
}

impl SymbolErrorProfile {
    /// Frequency xi at the argmax.
    pub fn argmax_xi(&self) -> f64 {
        xi(self.argmax_n)
    }

    /// Largest psi over the evanescent frequencies xi_n > k, if any.
    pub fn evanescent_max(&self) -> Option<f64> {
        let k = self.k.value();
        self.values
            .iter()
            .filter(|(x, _)| *x > k)
            .map(|(_, v)| *v)
            .reduce(f64::max)
    }

    /// Largest psi over the propagating frequencies xi_n < k, if any.
    pub fn propagating_max(&self) -> Option<f64> {
        let k = self.k.value();
        self.values
            .iter()
            .filter(|(x, _)| *x < k)
            .map(|(_, v)| *v)
            .reduce(f64::max)
    }
}

/// Sharp upper bounds on the error norms for one source spectrum.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    /// |f|_{H^p} * max_n psi_p
    pub l2_bound: f64,
    /// |f|_{H^p} * max_n psi_{p-1}
    pub h1_bound: f64,
    /// |f|_{H^p}
    pub f_seminorm: f64,
}

/// Result of a k-exponent fit on a doubling ladder.
#[derive(Debug, Clone)]
pub struct ExponentFit {
    pub alpha: f64,
    /// log2 of the raw value ratio at each ladder step, for diagnostics.
    pub step_log2_ratios: Vec<f64>,
}

/// psi_p(xi_n) = |H^-1 - R / H^h| / xi_n^p at grid frequency n.
///
/// p = -1 weights by xi_n instead of dividing.
pub fn psi(scheme: Scheme, k: WaveNumber, grid: GridSpec, p: i32, n: usize) -> Result<f64> {
    if n == 0 || n >= grid.n() {
        return Err(Error::InvalidArgument(format!(
            "mode {n} outside 1..{}",
            grid.n() - 1
        )));
    }
    let x = xi(n);
    let continuous = continuous_inverse_symbol(k, x)?;
    let lh = left_symbol(scheme, k, grid, x)?;
    let kv = k.value();
    if lh.abs() < RESONANCE_GUARD * kv * kv {
        return Err(Error::DiscreteResonance { n });
    }
    let discrete = right_symbol(scheme, k, grid, x)? / lh;
    Ok((continuous - discrete).abs() / x.powi(p))
}

/// Evaluate psi_p at every grid frequency; ties in the max break toward
/// smaller n.
pub fn profile(
    scheme: Scheme,
    k: WaveNumber,
    grid: GridSpec,
    p: i32,
) -> Result<SymbolErrorProfile> {
    let mut values = Vec::with_capacity(grid.interior_len());
    let mut max_value = f64::NEG_INFINITY;
    let mut argmax_n = 0;
    for n in 1..grid.n() {
        let v = psi(scheme, k, grid, p, n)?;
        if v > max_value {
            max_value = v;
            argmax_n = n;
        }
        values.push((xi(n), v));
    }
    Ok(SymbolErrorProfile {
        scheme,
        k,
        grid,
        p,
        values,
        max_value,
        argmax_n,
    })
}

/// k^p * max_n psi_p, the scaled quantity tracked across ladders.
pub fn scaled_max(scheme: Scheme, k: WaveNumber, grid: GridSpec, p: i32) -> Result<f64> {
    Ok(k.value().powi(p) * profile(scheme, k, grid, p)?.max_value)
}

/// Upper bounds on the L2 and H1 errors: |f|_{H^p} max psi_p and
/// |f|_{H^p} max psi_{p-1}.
pub fn error_bounds(
    scheme: Scheme,
    k: WaveNumber,
    grid: GridSpec,
    p: i32,
    f_hat: &SineSpectrum,
) -> Result<BoundReport> {
    if f_hat.grid() != grid {
        return Err(Error::InvalidArgument(
            "source spectrum is on a different grid".into(),
        ));
    }
    let prof_p = profile(scheme, k, grid, p)?;
    let prof_pm1 = profile(scheme, k, grid, p - 1)?;
    let f_seminorm = weighted_norm(f_hat, p);
    Ok(BoundReport {
        l2_bound: f_seminorm * prof_p.max_value,
        h1_bound: f_seminorm * prof_pm1.max_value,
        f_seminorm,
    })
}

/// Fit the k-exponent alpha in an error law value ~ k^alpha h^m from rows on
/// the ladder where k doubles and N quadruples.
///
/// Each step solves value ratio = (k ratio)^alpha * 4^-m; with exact k
/// doubling this reduces to alpha = 2m + log2(value ratio). The mean over
/// steps is returned.
pub fn fit_k_exponent(m: i32, rows: &[(WaveNumber, GridSpec, f64)]) -> Result<ExponentFit> {
    if rows.len() < 3 {
        return Err(Error::LadderShape(format!(
            "need at least 3 rows, got {}",
            rows.len()
        )));
    }
    for w in rows.windows(2) {
        let (ka, ga, _) = &w[0];
        let (kb, gb, _) = &w[1];
        if gb.n() != 4 * ga.n() {
            return Err(Error::LadderShape(format!(
                "N must quadruple per step: {} -> {}",
                ga.n(),
                gb.n()
            )));
        }
        let doubles = if ka.pi_multiple() > 0 {
            kb.pi_multiple() == 2 * ka.pi_multiple() && kb.offset() == ka.offset()
        } else {
            kb.pi_multiple() == 0 && (kb.value() / ka.value() - 2.0).abs() <= 1e-12
        };
        if !doubles {
            return Err(Error::LadderShape(format!(
                "k must double per step: {ka} -> {kb}"
            )));
        }
    }
    let mut step_log2_ratios = Vec::with_capacity(rows.len() - 1);
    let mut alphas = Vec::with_capacity(rows.len() - 1);
    for w in rows.windows(2) {
        let (ka, _, va) = &w[0];
        let (kb, _, vb) = &w[1];
        if *va <= 0.0 || *vb <= 0.0 {
            return Err(Error::LadderShape("ladder values must be positive".into()));
        }
        let r = (vb / va).log2();
        step_log2_ratios.push(r);
        alphas.push((r + 2.0 * m as f64) / (kb.value() / ka.value()).log2());
    }
    let alpha = alphas.iter().sum::<f64>() / alphas.len() as f64;
    Ok(ExponentFit {
        alpha,
        step_log2_ratios,
    })
}
