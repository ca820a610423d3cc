//! Grids, FFT plans, Fourier multipliers and the planar operator toolbox.

pub mod fft;
pub mod field;
pub mod grid;
pub mod maximal;
pub mod multiplier;
pub mod ops;
pub mod snapshot;

pub use fft::{Fft1, Fft2, Sign};
pub use field::{ComplexField1D, ComplexField2D};
pub use grid::{Grid1D, Grid2D};
pub use maximal::{default_radii, maximal_function_1d, maximal_function_2d};
pub use multiplier::{CauchySign, FourierMultiplierSpec, ZeroModePolicy};
pub use ops::{
    antilinear_fourier_1d, antilinear_fourier_1d_inverse, antilinear_fourier_2d, beurling, cauchy_project,
    cauchy_project_with, solid_cauchy, CauchyPair, Spectral1D, Spectral2D,
};
pub use snapshot::{read_snapshot, write_field_1d, write_field_2d, Snapshot};
