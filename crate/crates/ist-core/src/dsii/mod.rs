//! Scattering transform for the defocusing Davey-Stewartson II equation.

pub mod cgo;
pub mod flows;
pub mod planar;
pub mod potential;
pub mod transform;

pub use cgo::{cgo_solve, CGOState, CgoOptions, CgoSolver};
pub use flows::{
    dsii_ist_solution, dsii_linear, dsii_nonlinearity, dsii_splitstep, nonlocal_g_via_dbar, nonlocal_potential,
    DSIIRunConfig,
};
pub use planar::PlanarCauchy;
pub use potential::{lattice_phase, Potential2D};
pub use transform::{
    evolve_s, inverse_scattering, maximal_ratio, scattering_transform, transform_field, CgoLogRow, DSIIScatteringData,
    TransformOptions,
};
