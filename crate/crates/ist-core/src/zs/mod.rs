//! Direct scattering for the Zakharov-Shabat operator: Jost solutions, transition
//! coefficients, the Volterra series and the reflection coefficient.

pub mod jost;
pub mod potential;
pub mod reflection;
pub mod transition;
pub mod volterra;

pub use jost::{jost_sweep, JostSweeper, JostTrajectory, Scheme};
pub use potential::Potential1D;
pub use reflection::{reflection, ReflectionCoefficient};
pub use transition::{transition_data, DirectOptions, TransitionData};
pub use volterra::{truncation_bound, volterra_transition};

use crate::error::Result;
use crate::scalar::Real;

/// Direct scattering map `q -> r` on the spectral dual of the potential's grid.
pub fn direct_map<T: Real>(q: &Potential1D<T>, opts: &DirectOptions<T>) -> Result<ReflectionCoefficient<T>> {
    reflection(&transition_data(q, &q.grid().spectral_dual(), opts)?)
}
