//! Two independent discrete solvers: spectral-space division and
//! physical-space tridiagonal elimination. Each serves as the oracle for the
//! other.

use crate::error::{Error, Result};
use crate::experiments::SourceSpec;
use crate::schemes::{
    continuous_inverse_symbol, left_symbol, rhs_operator, right_symbol, stencil, Scheme,
    TridiagonalStencil, WaveNumber, RESONANCE_GUARD,
};
use crate::spectral::{dst_forward, synthesize_on_grid, xi, GridFunction, GridSpec, SineSpectrum};

/// Relative pivot guard for the elimination.
const PIVOT_GUARD: f64 = 1e-14;

/// A discrete solution carried in both representations.
#[derive(Debug, Clone)]
pub struct DiscreteSolution {
    grid: GridSpec,
    values: GridFunction,
    spectrum: SineSpectrum,
}

impl DiscreteSolution {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &GridFunction {
        &self.values
    }

    pub fn spectrum(&self) -> &SineSpectrum {
        &self.spectrum
    }
}

fn require_even(grid: GridSpec) -> Result<()> {
    if !grid.is_even() {
        return Err(Error::InvalidGrid(format!(
            "solver paths need even N, got {}",
            grid.n()
        )));
    }
    Ok(())
}

/// Solve by per-mode division: u_n = R_n f_n / H_n.
pub fn solve_spectral(
    scheme: Scheme,
    k: WaveNumber,
    grid: GridSpec,
    f_hat: &SineSpectrum,
) -> Result<DiscreteSolution> {
    require_even(grid)?;
    if f_hat.grid() != grid {
        return Err(Error::InvalidArgument(
            "source spectrum is on a different grid".into(),
        ));
    }
    let kv = k.value();
    let mut coeffs = Vec::with_capacity(grid.interior_len());
    for n in 1..grid.n() {
        let lh = left_symbol(scheme, k, grid, xi(n))?;
        if lh.abs() < RESONANCE_GUARD * kv * kv {
            return Err(Error::DiscreteResonance { n });
        }
        coeffs.push(right_symbol(scheme, k, grid, xi(n))? * f_hat.coeff(n) / lh);
    }
    let spectrum = SineSpectrum::new(grid, coeffs)?;
    let values = synthesize_on_grid(&spectrum);
    Ok(DiscreteSolution {
        grid,
        values,
        spectrum,
    })
}

/// Solve the (N-1)x(N-1) tridiagonal system by direct elimination without
/// pivoting; a pivot-magnitude guard reports near-singularity.
pub fn solve_physical(
    scheme: Scheme,
    k: WaveNumber,
    grid: GridSpec,
    source: &SourceSpec,
) -> Result<DiscreteSolution> {
    require_even(grid)?;
    let st = stencil(scheme, k, grid)?;
    let rhs = rhs_operator(scheme, source, k, grid)?;
    let u = thomas(&st, rhs.values())?;
    let values = GridFunction::new(grid, u)?;
    let spectrum = dst_forward(&values);
    Ok(DiscreteSolution {
        grid,
        values,
        spectrum,
    })
}

/// Exact solution spectrum u_n = f_n / (k^2 - xi_n^2) on the given grid.
pub fn exact_solution_spectrum(
    source: &SourceSpec,
    k: WaveNumber,
    grid: GridSpec,
) -> Result<SineSpectrum> {
    source.check_band_limit(grid)?;
    let mut spec = SineSpectrum::zero(grid);
    for &(mode, amp) in source.modes() {
        *spec.coeff_mut(mode)? = amp * continuous_inverse_symbol(k, xi(mode))?;
    }
    Ok(spec)
}

fn thomas(st: &TridiagonalStencil, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = rhs.len();
    let scale = st.diag.abs().max(2.0 * st.sub.abs());
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = st.diag;
    for i in 0..n {
        if i > 0 {
            pivot = st.diag - st.sub * c[i - 1];
        }
        if pivot.abs() < PIVOT_GUARD * scale {
            return Err(Error::SingularSystem { row: i });
        }
        c[i] = st.sup / pivot;
        d[i] = if i > 0 {
            (rhs[i] - st.sub * d[i - 1]) / pivot
        } else {
            rhs[i] / pivot
        };
    }
    let mut x = d;
    for i in (0..n.saturating_sub(1)).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}
