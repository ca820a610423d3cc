//! Time-dependent DS II: `i q_t + 2 (d^2 + dbar^2) q + (g + conj g) q = 0` with
//! `dbar g = -4 d |q|^2`, through the scattering transform and by split-step.

use num_complex::Complex;

use super::potential::Potential2D;
use super::transform::{evolve_s, inverse_scattering, scattering_transform, TransformOptions};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::spectral::{ComplexField2D, FourierMultiplierSpec, Grid2D, Spectral2D};

/// Largest admissible `dt * max |g + conj g|`.
pub const PHASE_BUDGET: f64 = 0.1;

/// Run parameters for the time-dependent pipelines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DSIIRunConfig<T> {
    pub t: T,
    pub dt: T,
    pub grid: Grid2D<T>,
    pub transform: TransformOptions<T>,
}

impl<T: Real> DSIIRunConfig<T> {
    pub fn new(grid: Grid2D<T>, t: T, dt: T, transform: TransformOptions<T>) -> Result<Self> {
        if !(dt > T::zero()) || !(t >= T::zero()) || !t.is_finite() {
            return Err(Error::InvalidParameter("t must be non-negative and dt positive".into()));
        }
        Ok(Self { t, dt, grid, transform })
    }
}

/// `V(t) f`: Fourier multiplier `e^{-i t (xi1^2 - xi2^2)}`.
pub fn dsii_linear<T: Real>(f: &ComplexField2D<T>, t: T) -> ComplexField2D<T> {
    Spectral2D::new(*f.grid()).apply(&FourierMultiplierSpec::hyperbolic_schrodinger(f.grid(), t), f)
}

/// Real potential `g + conj g` with `g = -4 S |q|^2`, `S` the Beurling transform.
pub fn nonlocal_potential<T: Real>(sp: &Spectral2D<T>, q: &[Complex<T>]) -> Vec<T> {
    let beurling = FourierMultiplierSpec::beurling(sp.grid());
    let mut g: Vec<_> = q.iter().map(|z| Complex::new(z.norm_sqr(), T::zero())).collect();
    sp.apply_in_place(&beurling, &mut g);
    let m8 = lit::<T>(-8.0);
    g.iter().map(|z| z.re * m8).collect()
}

/// `g = -4 dbar^{-1} d |q|^2`, the second route to the same potential.
pub fn nonlocal_g_via_dbar<T: Real>(sp: &Spectral2D<T>, q: &[Complex<T>]) -> Vec<Complex<T>> {
    let grid = sp.grid();
    let mut g: Vec<_> = q.iter().map(|z| Complex::new(z.norm_sqr(), T::zero())).collect();
    sp.apply_in_place(&FourierMultiplierSpec::d(grid), &mut g);
    sp.apply_in_place(&FourierMultiplierSpec::dbar_inverse(grid), &mut g);
    g.iter().map(|z| z * lit::<T>(-4.0)).collect()
}

/// `(g + conj g) q`.
pub fn dsii_nonlinearity<T: Real>(q: &ComplexField2D<T>) -> ComplexField2D<T> {
    let sp = Spectral2D::new(*q.grid());
    let v = nonlocal_potential(&sp, q.samples());
    let out = q.samples().iter().zip(&v).map(|(z, v)| z * *v).collect();
    ComplexField2D::new(*q.grid(), out).expect("finite product")
}

fn audit<T: Real>(v: &[T], dt: T) -> Result<()> {
    let value = dt * v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if !(value <= lit(PHASE_BUDGET)) {
        return Err(Error::PhaseAudit { value: to_f64(value), limit: PHASE_BUDGET });
    }
    Ok(())
}

/// Strang splitting: linear half step, phase rotation `e^{i (g + conj g) dt}` with `g`
/// from the midpoint field, linear half step. The step is shortened so it divides `t`.
pub fn dsii_splitstep<T: Real>(q0: &Potential2D<T>, t: T, dt: T) -> Result<Potential2D<T>> {
    if !(dt > T::zero()) || !(t >= T::zero()) {
        return Err(Error::InvalidParameter("t must be non-negative and dt positive".into()));
    }
    let grid = *q0.grid();
    let steps = (t / dt).ceil().to_usize().unwrap_or(0);
    let mut q = q0.samples().to_vec();
    if steps > 0 {
        let dt = t / from_usize(steps);
        let sp = Spectral2D::new(grid);
        let half = FourierMultiplierSpec::hyperbolic_schrodinger(&grid, dt * lit(0.5));
        for _ in 0..steps {
            sp.apply_in_place(&half, &mut q);
            let v = nonlocal_potential(&sp, &q);
            audit(&v, dt)?;
            q.iter_mut().zip(&v).for_each(|(z, v)| *z = *z * Complex::from_polar(T::one(), *v * dt));
            sp.apply_in_place(&half, &mut q);
        }
    }
    Ok(Potential2D::new(ComplexField2D::new(grid, q)?))
}

/// `q(t) = S(e^{2 i (k^2 + kbar^2) t} S q0)`.
pub fn dsii_ist_solution<T: Real>(q0: &Potential2D<T>, t: T, cfg: &DSIIRunConfig<T>) -> Result<Potential2D<T>> {
    if !q0.grid().matches(&cfg.grid) {
        return Err(Error::GridMismatch("potential grid differs from the run grid".into()));
    }
    let s = scattering_transform(q0, &cfg.transform)?;
    inverse_scattering(&evolve_s(&s, t), &cfg.transform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::field::weighted_l2_diff;

    fn gauss(grid: Grid2D<f64>, a: f64) -> Potential2D<f64> {
        Potential2D::gaussian(grid, a, 1.0).unwrap()
    }

    #[test]
    fn linear_identity_and_unitarity() {
        let grid = Grid2D::<f64>::square(64, 8.0).unwrap();
        let f = Potential2D::packet(grid, 1.0, 1.0, (0.5, -0.3), (1.0, 0.5)).unwrap();
        let same = dsii_linear(f.field(), 0.0);
        assert!(weighted_l2_diff(same.samples(), f.samples(), 1.0) < 1e-14);
        let g = dsii_linear(f.field(), 0.9);
        assert!((g.l2_norm() - f.l2_norm()).abs() < 1e-12);
    }

    #[test]
    fn linear_matches_separable_gaussian_closed_form() {
        // The x1 factor evolves forward and the x2 factor backward in time.
        let grid = Grid2D::<f64>::square(128, 16.0).unwrap();
        let f = gauss(grid, 1.0);
        let t = 0.6;
        let g = dsii_linear(f.field(), t);
        let (a, b) = (Complex::new(1.0, 4.0 * t), Complex::new(1.0, -4.0 * t));
        for j1 in 0..128 {
            for j2 in 0..128 {
                let (x1, x2) = grid.node(j1, j2);
                let want = (-(x1 * x1) / a - (x2 * x2) / b).exp() / (a * b).sqrt();
                assert!((g.samples()[grid.index(j1, j2)] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dispersive_decay_rate() {
        let grid = Grid2D::<f64>::square(512, 110.0).unwrap();
        let f = gauss(grid, 1.0);
        let l1 = f.l1_norm();
        let ratios: Vec<f64> =
            [1.0, 2.0, 4.0, 8.0].iter().map(|&t| dsii_linear(f.field(), t).sup_norm() * t / l1).collect();
        let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
        assert!(hi / lo < 1.1, "{ratios:?}");
        assert!(hi <= 1.0 / (4.0 * std::f64::consts::PI) + 1e-9);
    }

    #[test]
    fn nonlinearity_vanishes_on_zero_data() {
        let grid = Grid2D::<f64>::square(32, 4.0).unwrap();
        assert!(dsii_nonlinearity(&ComplexField2D::zeros(grid)).samples().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn potential_is_real_and_routes_agree() {
        let grid = Grid2D::<f64>::square(64, 8.0).unwrap();
        let q = Potential2D::packet(grid, 0.8, 1.2, (0.4, 0.2), (0.7, -0.3)).unwrap();
        let sp = Spectral2D::new(grid);
        let g = nonlocal_g_via_dbar(&sp, q.samples());
        let v = nonlocal_potential(&sp, q.samples());
        let sum_imag = g.iter().map(|z| (z + z.conj()).im.abs()).fold(0.0, f64::max);
        assert!(sum_imag <= 1e-12);
        let gap = g.iter().zip(&v).map(|(g, v)| (2.0 * g.re - v).abs()).fold(0.0, f64::max);
        assert!(gap <= 1e-12, "{gap}");
    }

    #[test]
    fn splitstep_keeps_zero_and_conserves_mass() {
        let grid = Grid2D::<f64>::square(64, 8.0).unwrap();
        let z = dsii_splitstep(&Potential2D::zero(grid), 0.5, 0.01).unwrap();
        assert!(z.samples().iter().all(|v| v.norm() == 0.0));
        let q0 = gauss(grid, 0.4);
        let q = dsii_splitstep(&q0, 0.5, 0.01).unwrap();
        assert!((q.l2_norm() - q0.l2_norm()).abs() / q0.l2_norm() <= 1e-8);
    }

    #[test]
    fn splitstep_is_second_order() {
        let grid = Grid2D::<f64>::square(64, 8.0).unwrap();
        let q0 = gauss(grid, 0.8);
        let run = |dt: f64| dsii_splitstep(&q0, 0.4, dt).unwrap();
        let (a, b, c) = (run(0.04), run(0.02), run(0.01));
        let e1 = weighted_l2_diff(a.samples(), b.samples(), 1.0);
        let e2 = weighted_l2_diff(b.samples(), c.samples(), 1.0);
        let order = (e1 / e2).log2();
        assert!((order - 2.0).abs() < 0.2, "order {order}");
    }

    #[test]
    fn audit_rejects_large_steps() {
        let grid = Grid2D::<f64>::square(32, 4.0).unwrap();
        assert!(matches!(dsii_splitstep(&gauss(grid, 2.0), 1.0, 0.5), Err(Error::PhaseAudit { .. })));
    }

    #[test]
    fn run_config_rejects_bad_steps() {
        let grid = Grid2D::<f64>::square(32, 4.0).unwrap();
        assert!(DSIIRunConfig::new(grid, 1.0, 0.0, TransformOptions::default()).is_err());
        assert!(DSIIRunConfig::new(grid, -1.0, 0.1, TransformOptions::default()).is_err());
    }

    #[test]
    fn ist_solution_of_zero_data_is_zero() {
        let grid = Grid2D::<f64>::square(16, 4.0).unwrap();
        let cfg = DSIIRunConfig::new(grid, 0.5, 0.1, TransformOptions { block: 8, ..Default::default() }).unwrap();
        let q = dsii_ist_solution(&Potential2D::zero(grid), 0.5, &cfg).unwrap();
        assert!(q.samples().iter().all(|z| z.norm() == 0.0));
    }
}
