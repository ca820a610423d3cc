//! Inverse scattering for the Zakharov-Shabat operator via the Beals-Coifman
//! integral equation.

pub mod bc;
pub mod reconstruct;
pub mod scalar_rhp;

pub use bc::{bc_solve, BCSolution, BcOptions, BcSolver, PathChoice, SolverPath};
pub use reconstruct::{inverse_map, reconstruct_q, recover_value, Reconstruction};
pub use scalar_rhp::a_from_r;
