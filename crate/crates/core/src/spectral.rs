//! Sine-series transforms on the uniform grid and Parseval-based norms.
//!
//! A grid function vanishes at the endpoints of (0,1) and lives on the interior
//! points x_j = j/N. Its sine spectrum holds the coefficients of
//! v(x) = sum_n v_n sin(n pi x), n = 1..N-1, with the forward transform
//! v_n = (2/N) sum_j v(x_j) sin(n pi x_j).

use std::f64::consts::PI;

use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};

/// Spectra and grid functions switch from the O(N^2) summation to the
/// FFT-backed path above this N. Both paths agree to ~1e-14 relative.
const FAST_PATH_MIN_N: usize = 128;

/// Grid frequency xi_n = n*pi.
pub fn xi(n: usize) -> f64 {
    n as f64 * PI
}

/// Uniform grid on (0,1) with N subintervals and interior points x_j = j/N.
///
/// N >= 4 of either parity is accepted here; solver and experiment paths
/// additionally require even N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    n: usize,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidGrid(format!(
                "N = {n} is below the minimum of 4"
            )));
        }
        Ok(Self { n })
    }

    /// Number of subintervals N.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Grid spacing h = 1/N.
    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// Interior point x_j = j/N for j = 1..N-1.
    pub fn x(&self, j: usize) -> f64 {
        j as f64 / self.n as f64
    }

    /// Number of interior points, N-1.
    pub fn interior_len(&self) -> usize {
        self.n - 1
    }
}

/// Real values at the interior grid points x_1..x_{N-1}; boundary values are 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: GridSpec,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.interior_len() {
            return Err(Error::LengthMismatch {
                got: values.len(),
                want: grid.interior_len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        let values = (1..grid.n()).map(|j| f(grid.x(j))).collect();
        Self { grid, values }
    }

    pub fn zero(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.interior_len()],
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Sine coefficients v_n, n = 1..N-1, stored at index n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct SineSpectrum {
    grid: GridSpec,
    coeffs: Vec<f64>,
}

impl SineSpectrum {
    pub fn new(grid: GridSpec, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != grid.interior_len() {
            return Err(Error::LengthMismatch {
                got: coeffs.len(),
                want: grid.interior_len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zero(grid: GridSpec) -> Self {
        Self {
            grid,
            coeffs: vec![0.0; grid.interior_len()],
        }
    }

    /// Spectrum with a single unit coefficient at mode n.
    pub fn unit(grid: GridSpec, n: usize) -> Result<Self> {
        let mut s = Self::zero(grid);
        *s.coeff_mut(n)? = 1.0;
        Ok(s)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of mode n (1-based).
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs[n - 1]
    }

    pub fn coeff_mut(&mut self, n: usize) -> Result<&mut f64> {
        if n == 0 || n >= self.grid.n() {
            return Err(Error::InvalidArgument(format!(
                "mode {n} outside 1..{}",
                self.grid.n() - 1
            )));
        }
        Ok(&mut self.coeffs[n - 1])
    }
}

/// sin(pi * num / den) with the periodicity reduction done in integer
/// arithmetic, so large mode-times-index products lose no accuracy.
pub(crate) fn sin_pi_ratio(num: usize, den: usize) -> f64 {
    let mut r = num % (2 * den);
    let mut sign = 1.0;
    if r >= den {
        sign = -1.0;
        r -= den;
    }
    // reflect into [0, den/2] so the sine argument stays within [0, pi/2]
    if 2 * r > den {
        r = den - r;
    }
    sign * (PI * r as f64 / den as f64).sin()
}

/// Table of sin(pi r / N) for r = 0..2N-1; entry r serves sin(pi * (j*m) / N)
/// after the exact reduction r = j*m mod 2N.
fn sine_table(n: usize) -> Vec<f64> {
    (0..2 * n).map(|r| sin_pi_ratio(r, n)).collect()
}

/// Direct O(N^2) evaluation of S_m = sum_j input[j-1] sin(m pi j / N).
fn sine_sums_direct(input: &[f64], n: usize) -> Vec<f64> {
    let table = sine_table(n);
    (1..n)
        .map(|m| {
            let mut acc = 0.0;
            for (j, v) in input.iter().enumerate() {
                acc += v * table[((j + 1) * m) % (2 * n)];
            }
            acc
        })
        .collect()
}

/// Same sums via a length-2N complex FFT of the odd extension:
/// S_m = -Im(FFT(odd_ext)[m]) / 2.
fn sine_sums_fast(input: &[f64], n: usize) -> Vec<f64> {
    let mut buf = vec![Complex::new(0.0, 0.0); 2 * n];
    for (j, v) in input.iter().enumerate() {
        buf[j + 1].re = *v;
        buf[2 * n - j - 1].re = -*v;
    }
    FftPlanner::new().plan_fft_forward(2 * n).process(&mut buf);
    (1..n).map(|m| -0.5 * buf[m].im).collect()
}

fn sine_sums(input: &[f64], n: usize) -> Vec<f64> {
    if n >= FAST_PATH_MIN_N {
        sine_sums_fast(input, n)
    } else {
        sine_sums_direct(input, n)
    }
}

/// Forward transform: coefficients (2/N) sum_j g(x_j) sin(n pi x_j).
pub fn dst_forward(g: &GridFunction) -> SineSpectrum {
    let n = g.grid.n();
    let scale = 2.0 / n as f64;
    let coeffs = sine_sums(g.values(), n)
        .into_iter()
        .map(|s| scale * s)
        .collect();
    SineSpectrum {
        grid: g.grid,
        coeffs,
    }
}

/// Reference forward transform by direct summation; the oracle the fast path
/// is tested against.
pub fn dst_forward_direct(g: &GridFunction) -> SineSpectrum {
    let n = g.grid.n();
    let scale = 2.0 / n as f64;
    let coeffs = sine_sums_direct(g.values(), n)
        .into_iter()
        .map(|s| scale * s)
        .collect();
    SineSpectrum {
        grid: g.grid,
        coeffs,
    }
}

/// Evaluate the sine series on all interior grid points; inverts `dst_forward`.
pub fn synthesize_on_grid(s: &SineSpectrum) -> GridFunction {
    let n = s.grid.n();
    GridFunction {
        grid: s.grid,
        values: sine_sums(s.coeffs(), n),
    }
}

/// Reference grid synthesis by direct summation.
pub fn synthesize_on_grid_direct(s: &SineSpectrum) -> GridFunction {
    let n = s.grid.n();
    GridFunction {
        grid: s.grid,
        values: sine_sums_direct(s.coeffs(), n),
    }
}

/// Evaluate the sine series sum_n v_n sin(n pi x) at an arbitrary x in (0,1).
pub fn sine_synthesis(s: &SineSpectrum, x: f64) -> f64 {
    s.coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * ((i + 1) as f64 * PI * x).sin())
        .sum()
}

/// Parseval norm sqrt( (1/2) sum_n xi_n^(2 order) v_n^2 ).
///
/// Order 0 is the L2 norm of the sine series, order 1 the H1 semi-norm, and
/// order p the H^p semi-norm; order -1 weights modes by 1/xi_n.
pub fn weighted_norm(s: &SineSpectrum, order: i32) -> f64 {
    let sum: f64 = s
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let w = xi(i + 1).powi(order) * c;
            w * w
        })
        .sum();
    (0.5 * sum).sqrt()
}
