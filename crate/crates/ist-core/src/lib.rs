//! Direct and inverse scattering for the defocusing cubic NLS and Davey-Stewartson II
//! equations on periodic grids, with split-step reference solvers.

pub mod dsii;
pub mod error;
pub mod krylov;
pub mod nls;
pub mod rhp;
pub mod scalar;
pub mod spectral;
pub mod zs;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision instances of the generic types.
pub type Grid1 = spectral::Grid1D<f64>;
pub type Grid2 = spectral::Grid2D<f64>;
pub type Field1 = spectral::ComplexField1D<f64>;
pub type Field2 = spectral::ComplexField2D<f64>;
pub type Potential1 = zs::Potential1D<f64>;
pub type Reflection = zs::ReflectionCoefficient<f64>;
pub type Potential2 = dsii::Potential2D<f64>;
pub type ScatteringData2 = dsii::DSIIScatteringData<f64>;

/// Single-precision instances.
pub type Grid1F32 = spectral::Grid1D<f32>;
pub type Grid2F32 = spectral::Grid2D<f32>;
pub type Field1F32 = spectral::ComplexField1D<f32>;
pub type Field2F32 = spectral::ComplexField2D<f32>;
pub type Potential1F32 = zs::Potential1D<f32>;
pub type Potential2F32 = dsii::Potential2D<f32>;
