//! Time-dependent pipelines for the defocusing cubic NLS.

pub mod asymptotics;
pub mod evolve;
pub mod splitstep;

pub use asymptotics::{deift_zhou_profile, ln_gamma, AsymptoticProfile, ProfileEvaluator};
pub use evolve::{evolve_reflection, ist_solve, ist_solve_at, lambda_grid_for, EvolutionConfig};
pub use splitstep::{linear_propagator, splitstep_nls, PHASE_BUDGET};
