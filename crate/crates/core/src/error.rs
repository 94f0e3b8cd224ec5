//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid wavenumber: {0}")]
    InvalidWaveNumber(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("value array has length {got}, grid needs N-1 = {want}")]
    LengthMismatch { got: usize, want: usize },

    #[error("source mode {mode} is not resolved on a grid with N = {n}")]
    BandLimit { mode: usize, n: usize },

    #[error("modified wavenumber degenerates at kh = {kh}")]
    DegenerateModifiedWavenumber { kh: f64 },

    #[error("continuous symbol nearly resonant: k = {k}, xi = {xi}")]
    Resonance { k: f64, xi: f64 },

    #[error("discrete symbol nearly singular at mode n = {n}")]
    DiscreteResonance { n: usize },

    #[error("singular tridiagonal system at row {row}")]
    SingularSystem { row: usize },

    #[error("ladder structure violated: {0}")]
    LadderShape(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
