use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rhp::{reconstruct_q, recover_value, BcOptions, BcSolver, Reconstruction};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::spectral::Grid1D;
use crate::zs::{reflection, transition_data, DirectOptions, Potential1D, ReflectionCoefficient};

/// `r(lambda, t) = e^{4 i lambda^2 t} r0(lambda)`.
pub fn evolve_reflection<T: Real>(r0: &ReflectionCoefficient<T>, t: T) -> ReflectionCoefficient<T> {
    let four = lit::<T>(4.0);
    let grid = *r0.grid();
    let samples = r0
        .samples()
        .iter()
        .enumerate()
        .map(|(m, z)| {
            let l = grid.node(m);
            z * Complex::from_polar(T::one(), four * l * l * t)
        })
        .collect();
    r0.with_samples(samples)
}

/// Grids and tolerances for the time-dependent pipelines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionConfig<T> {
    /// Split-step increment.
    pub dt: T,
    /// Nodes where `q(., t)` is reported.
    pub x_grid: Grid1D<T>,
    /// Spectral grid carrying `r`; its dual torus must contain the phase `e^{2 i t theta}`.
    pub lambda_grid: Grid1D<T>,
    pub direct: DirectOptions<T>,
    pub bc: BcOptions<T>,
}

impl<T: Real> EvolutionConfig<T> {
    pub fn new(x_grid: Grid1D<T>, lambda_grid: Grid1D<T>, dt: T) -> Result<Self> {
        if !(dt > T::zero()) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {}", to_f64(dt))));
        }
        Ok(Self { dt, x_grid, lambda_grid, direct: DirectOptions::default(), bc: BcOptions::default() })
    }
}

/// Spectral grid of half-width at least `extent` whose dual torus has half-width at least
/// `2 (4 t extent + x_extent)`, so the phase `e^{2 i (2 t lambda^2 + x lambda)}` stays resolved.
pub fn lambda_grid_for<T: Real>(extent: T, x_extent: T, t: T) -> Result<Grid1D<T>> {
    let four = lit::<T>(4.0);
    let dual = (lit::<T>(2.0) * (four * t.abs() * extent + x_extent.abs())).max(T::one());
    let need = four * dual * extent / T::PI();
    let mut n = 8usize;
    while from_usize::<T>(n) < need {
        n *= 2;
    }
    Grid1D::new(n, from_usize::<T>(n) * T::PI() / (four * dual))
}

/// `q(., t) = I(e^{4 i (.)^2 t} R(q0))` on `cfg.x_grid`.
pub fn ist_solve<T: Real>(q0: &Potential1D<T>, t: T, cfg: &EvolutionConfig<T>) -> Result<Reconstruction<T>> {
    let r0 = reflection(&transition_data(q0, &cfg.lambda_grid, &cfg.direct)?)?;
    reconstruct_q(&evolve_reflection(&r0, t), &cfg.x_grid, &cfg.bc)
}

/// Solution values at arbitrary `xs` from precomputed scattering data.
pub fn ist_solve_at<T: Real>(
    r0: &ReflectionCoefficient<T>,
    t: T,
    xs: &[T],
    opts: &BcOptions<T>,
) -> Result<Vec<Complex<T>>> {
    let r = evolve_reflection(r0, t);
    let solver = BcSolver::new(&r, *opts)?;
    xs.par_iter().map(|&x| Ok(recover_value(&solver, &r, &solver.solve(x)?))).collect()
}
