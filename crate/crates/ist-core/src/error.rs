use thiserror::Error;

/// Errors raised by the scattering solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },
    #[error("sample count {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("step-size audit failed: |lambda| h = {phase:.6} exceeds {limit:.6}")]
    StepAudit { phase: f64, limit: f64 },
    #[error("unitarity violated at lambda = {lambda}: ||a|^2 - |b|^2 - 1| = {deviation:e}")]
    Unitarity { lambda: f64, deviation: f64 },
    #[error("Volterra truncation bound {bound:e} exceeds tolerance {tol:e}")]
    Truncation { bound: f64, tol: f64 },
    #[error("Beals-Coifman solve did not converge at x = {x}: residual {residual:e} after {iterations} iterations")]
    BcNonConvergence { x: f64, residual: f64, iterations: usize },
    #[error("reflection coefficient sup norm {sup:.6} is not below 1")]
    NotDefocusing { sup: f64 },
    #[error("spectral point {re} + {im}i lies within one grid spacing of the real axis")]
    NearRealAxis { re: f64, im: f64 },
    #[error("stationary point {z0} lies outside the spectral grid")]
    OutsideGrid { z0: f64 },
    #[error("k = ({k1}, {k2}) is not on the dual lattice")]
    LatticeMismatch { k1: f64, k2: f64 },
    #[error("CGO solve did not converge at k = ({k1}, {k2}), |q|_2 = {norm_q}: residual {residual:e} after {iterations} iterations")]
    CgoNonConvergence { k1: f64, k2: f64, norm_q: f64, residual: f64, iterations: usize },
    #[error("phase audit failed: {value:.6} exceeds {limit:.6}")]
    PhaseAudit { value: f64, limit: f64 },
    #[error("radii list is empty")]
    EmptyRadii,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("snapshot format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
