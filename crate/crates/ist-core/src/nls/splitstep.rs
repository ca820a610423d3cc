use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::spectral::{ComplexField1D, FourierMultiplierSpec, Spectral1D};
use crate::zs::Potential1D;

/// `e^{i t Delta} f`: Fourier multiplier `e^{-i t xi^2}`.
pub fn linear_propagator<T: Real>(f: &ComplexField1D<T>, t: T) -> ComplexField1D<T> {
    let spec = FourierMultiplierSpec::schrodinger(f.grid(), t);
    Spectral1D::new(*f.grid()).apply(&spec, f)
}

/// Largest admissible `dt * max 2|q|^2`.
pub const PHASE_BUDGET: f64 = 0.1;

fn audit<T: Real>(q: &[Complex<T>], dt: T) -> Result<()> {
    let peak = q.iter().fold(T::zero(), |m, z| m.max(z.norm_sqr()));
    let value = dt * lit::<T>(2.0) * peak;
    if !(value <= lit(PHASE_BUDGET)) {
        return Err(Error::PhaseAudit { value: to_f64(value), limit: PHASE_BUDGET });
    }
    Ok(())
}

/// Strang splitting for `i q_t + q_xx - 2|q|^2 q = 0`: linear half step, exact phase
/// rotation `e^{-2 i |q|^2 dt}`, linear half step. The step is shortened so it divides `t`.
pub fn splitstep_nls<T: Real>(q0: &Potential1D<T>, t: T, dt: T) -> Result<Potential1D<T>> {
    if !(dt > T::zero()) || !(t >= T::zero()) {
        return Err(Error::InvalidParameter("t must be non-negative and dt positive".into()));
    }
    let grid = *q0.grid();
    let steps = (t / dt).ceil().to_usize().unwrap_or(0);
    let mut q = q0.samples().to_vec();
    if steps > 0 {
        let dt = t / from_usize(steps);
        let ops = Spectral1D::new(grid);
        let half = FourierMultiplierSpec::schrodinger(&grid, dt * lit(0.5));
        let two = lit::<T>(2.0);
        for _ in 0..steps {
            ops.apply_in_place(&half, &mut q);
            audit(&q, dt)?;
            q.iter_mut().for_each(|z| *z = *z * Complex::from_polar(T::one(), -two * z.norm_sqr() * dt));
            ops.apply_in_place(&half, &mut q);
        }
    }
    Ok(Potential1D::compact(ComplexField1D::new(grid, q)?))
}
