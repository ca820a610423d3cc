//! Transition coefficients from the iterated-integral (Volterra) series.
//!
//! Level `k+1` of the series is `-int_x^L K(y) N^(k)(y) dy`. Every integrand is a
//! product of `q` with lattice phases `e^{+-2 i lambda y}`, so the cumulative
//! integrals are taken spectrally: periodic antiderivative plus the mean ramp. The
//! recursion runs on a twice-refined grid so that `e^{+-2 i lambda y}` stays below
//! the Nyquist frequency for every `lambda` on the spectral dual.

use num_complex::Complex;
use rayon::prelude::*;

use super::potential::Potential1D;
use super::transition::TransitionData;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::spectral::{Fft1, Grid1D};

/// `G(x_j) = int_{x_j}^{L} g(y) dy` for a periodic, localized `g`.
fn cumulative_from_right<T: Real>(fft: &Fft1<T>, grid: &Grid1D<T>, g: &mut [Complex<T>]) {
    let n = g.len();
    fft.forward(g);
    let mean = g[0] / from_usize::<T>(n);
    g[0] = Complex::new(T::zero(), T::zero());
    for (m, z) in g.iter_mut().enumerate().skip(1) {
        *z = *z / Complex::new(T::zero(), grid.frequency(m));
    }
    fft.inverse(g);
    let p0 = g[0];
    let l = grid.half_width();
    for (j, z) in g.iter_mut().enumerate() {
        *z = p0 - *z + mean * (l - grid.node(j));
    }
}

/// Band-limited interpolation of `f` onto the grid with twice as many nodes.
fn refine<T: Real>(f: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = f.len();
    let mut spec = f.to_vec();
    Fft1::new(n).forward(&mut spec);
    let zero = Complex::new(T::zero(), T::zero());
    let mut fine = vec![zero; 2 * n];
    let half = n / 2;
    fine[..half].copy_from_slice(&spec[..half]);
    fine[2 * n - half + 1..].copy_from_slice(&spec[half + 1..]);
    // Nyquist bin split evenly between +-n/2.
    let nyq = spec[half] * lit::<T>(0.5);
    fine[half] = nyq;
    fine[2 * n - half] = nyq;
    Fft1::new(2 * n).inverse(&mut fine);
    // The inverse divides by 2n; the forward sum was over n nodes.
    let two = lit::<T>(2.0);
    fine.iter_mut().for_each(|z| *z = *z * two);
    // Node x_j of the coarse grid sits at index 2j of the fine grid.
    fine
}

/// Bound on the first omitted term pair, `|q|_1^{2 n_max + 2} / (2 n_max + 2)!`.
pub fn truncation_bound<T: Real>(q: &Potential1D<T>, n_max: usize) -> T {
    let m = q.l1_norm() + q.tail_mass();
    let order = 2 * n_max + 2;
    (1..=order).fold(T::one(), |acc, k| acc * m / from_usize(k))
}

/// Series truncated after `a = 1 + A_2 + ... + A_{2 n_max}` and `b = -(A_1 + ... + A_{2 n_max + 1})`.
pub fn volterra_transition<T: Real>(
    q: &Potential1D<T>,
    lambda_grid: &Grid1D<T>,
    n_max: usize,
    tol: T,
) -> Result<TransitionData<T>> {
    let bound = truncation_bound(q, n_max);
    if !(bound <= tol) {
        return Err(Error::Truncation { bound: to_f64(bound), tol: to_f64(tol) });
    }
    let grid = Grid1D::new(2 * q.grid().len(), q.grid().half_width())?;
    let fft = Fft1::new(grid.len());
    let nodes = grid.nodes();
    let qf = refine(q.samples());
    let levels = 2 * n_max + 1;
    let cols: Vec<(Complex<T>, Complex<T>)> = (0..lambda_grid.len())
        .into_par_iter()
        .map(|m| {
            let lam = lambda_grid.node(m);
            let i = Complex::new(T::zero(), T::one());
            let up: Vec<Complex<T>> =
                nodes.iter().zip(&qf).map(|(&y, &qy)| (i * lam * y * (T::one() + T::one())).exp() * qy).collect();
            let mut a = Complex::new(T::one(), T::zero());
            let mut b = Complex::new(T::zero(), T::zero());
            let mut prev: Vec<Complex<T>> = vec![Complex::new(T::one(), T::zero()); grid.len()];
            for k in 1..=levels {
                // Odd levels feed N21 through e^{-2i lambda y} conj(q); even levels feed N11.
                let mut g: Vec<Complex<T>> = if k % 2 == 1 {
                    up.iter().zip(&prev).map(|(u, p)| u.conj() * p).collect()
                } else {
                    up.iter().zip(&prev).map(|(u, p)| u * p).collect()
                };
                cumulative_from_right(&fft, &grid, &mut g);
                g.iter_mut().for_each(|z| *z = -*z);
                if k % 2 == 1 {
                    b = b + g[0];
                } else {
                    a = a + g[0];
                }
                prev = g;
            }
            (a, b)
        })
        .collect();
    let (a, b) = cols.into_iter().unzip();
    TransitionData::new(*lambda_grid, a, b, T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{antilinear_fourier_1d, ComplexField1D};
    use crate::zs::transition::{transition_data, DirectOptions};

    #[test]
    fn cumulative_integral_of_gaussian() {
        let grid = Grid1D::<f64>::new(256, 10.0).unwrap();
        let fft = Fft1::new(256);
        let mut g: Vec<_> = grid.nodes().iter().map(|x| Complex::new((-x * x).exp(), 0.0)).collect();
        cumulative_from_right(&fft, &grid, &mut g);
        let sp = std::f64::consts::PI.sqrt();
        // int_x^inf e^{-y^2} dy = sqrt(pi)/2 erfc(x); check x = -L and x = 0.
        assert!((g[0].re - sp).abs() < 1e-12);
        assert!((g[128].re - sp / 2.0).abs() < 1e-12);
    }

    #[test]
    fn refinement_interpolates_trigonometric_polynomials() {
        let grid = Grid1D::<f64>::new(32, 3.0).unwrap();
        let f = |x: f64| Complex::new((2.0 * x).cos(), (x * std::f64::consts::PI / 3.0 * 5.0).sin());
        let coarse: Vec<_> = grid.nodes().iter().map(|&x| f(x)).collect();
        let fine = refine(&coarse);
        let fg = Grid1D::<f64>::new(64, 3.0).unwrap();
        for (j, z) in fine.iter().enumerate() {
            if j % 2 == 0 {
                assert!((z - coarse[j / 2]).norm() < 1e-13);
            }
            let x = fg.node(j);
            let want = Complex::new(0.0, (x * std::f64::consts::PI / 3.0 * 5.0).sin());
            assert!((z.im - want.im).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_potential() {
        let grid = Grid1D::<f64>::new(64, 4.0).unwrap();
        let td = volterra_transition(&Potential1D::zero(grid), &grid.spectral_dual(), 3, 1e-12).unwrap();
        assert!(td.a().iter().all(|a| *a == Complex::new(1.0, 0.0)));
        assert!(td.b().iter().all(|b| b.norm() < 1e-15));
    }

    #[test]
    fn first_term_is_the_linearization() {
        let grid = Grid1D::<f64>::new(256, 8.0).unwrap();
        let q = Potential1D::gaussian(grid, 0.01, 1.0).unwrap();
        let td = volterra_transition(&q, &grid.spectral_dual(), 0, 1e-3).unwrap();
        let lin = antilinear_fourier_1d(q.field());
        assert!(td.a().iter().all(|a| *a == Complex::new(1.0, 0.0)));
        for (b, f) in td.b().iter().zip(lin.samples()) {
            assert!((b + f).norm() < 1e-14);
        }
    }

    #[test]
    fn small_data_matches_ode_path() {
        let grid = Grid1D::<f64>::new(1024, 16.0).unwrap();
        let lg = grid.spectral_dual();
        let q = Potential1D::gaussian(grid, 0.1, 1.0).unwrap();
        let series = volterra_transition(&q, &lg, 6, 1e-7).unwrap();
        let ode = transition_data(&q, &lg, &DirectOptions::default()).unwrap();
        let err = (0..lg.len())
            .map(|m| (series.a()[m] - ode.a()[m]).norm().max((series.b()[m] - ode.b()[m]).norm()))
            .fold(0.0, f64::max);
        assert!(err <= 1e-7, "series vs ODE {err}");
    }

    #[test]
    fn truncation_bound_enforced() {
        let grid = Grid1D::<f64>::new(128, 8.0).unwrap();
        let q = Potential1D::gaussian(grid, 2.0, 1.0).unwrap();
        assert!(matches!(volterra_transition(&q, &grid.spectral_dual(), 1, 1e-8), Err(Error::Truncation { .. })));
        let f = ComplexField1D::zeros(grid);
        assert_eq!(truncation_bound(&Potential1D::compact(f), 2), 0.0);
    }
}
