//! Fourier-symbol accuracy analysis of finite-difference schemes for the 1D
//! Helmholtz equation u'' + k^2 u = f on (0,1) with Dirichlet boundary data.
//!
//! The crate measures how the discretization error of a scheme distributes
//! over the sine frequencies of a band-limited source: per-frequency symbol
//! errors, sharp L2/H1 bounds built from them, two mutually checking discrete
//! solvers, and the sweep machinery that extracts wavenumber-explicit
//! convergence orders.

pub mod error;
pub mod experiments;
pub mod schemes;
pub mod solver;
pub mod spectral;
pub mod symbol_analysis;

pub use error::{Error, Result};
pub use experiments::{
    even_ceil, ladder_exponents, run_case, sweep_h_refinement, sweep_kh_fixed, sweep_ladder,
    ErrorReport, KhFixedEntry, SourceKind, SourceSpec, SweepRow,
};
pub use schemes::{
    continuous_inverse_symbol, left_symbol, modified_wavenumber, rhs_operator, right_symbol,
    stencil, Scheme, TridiagonalStencil, WaveNumber,
};
pub use solver::{exact_solution_spectrum, solve_physical, solve_spectral, DiscreteSolution};
pub use spectral::{
    dst_forward, dst_forward_direct, sine_synthesis, synthesize_on_grid, synthesize_on_grid_direct,
    weighted_norm, xi, GridFunction, GridSpec, SineSpectrum,
};
pub use symbol_analysis::{
    error_bounds, fit_k_exponent, profile, psi, scaled_max, BoundReport, ExponentFit,
    SymbolErrorProfile,
};
