//! Discrete Hardy-Littlewood maximal function over a ladder of radii.

use num_complex::Complex;

use super::fft::{Fft1, Fft2};
use super::field::{ComplexField1D, ComplexField2D};
use super::grid::signed_index;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// Radii `h, 2h, 4h, ...` up to `L/2`.
pub fn default_radii<T: Real>(spacing: T, half_width: T) -> Vec<T> {
    let mut out = Vec::new();
    let mut r = spacing;
    while r <= half_width * lit(0.5) {
        out.push(r);
        r = r + r;
    }
    if out.is_empty() {
        out.push(spacing);
    }
    out
}

fn check_radii<T: Real>(radii: &[T]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::EmptyRadii);
    }
    if radii.iter().any(|r| !(r.is_finite() && *r > T::zero())) {
        return Err(Error::InvalidParameter("radii must be positive and finite".into()));
    }
    Ok(())
}

/// Averages `|f|` against each stencil spectrum and keeps the running maximum.
fn sup_of_averages<T: Real>(
    magnitude: &[Complex<T>],
    stencils: impl Iterator<Item = Vec<Complex<T>>>,
    forward: impl Fn(&mut [Complex<T>]),
    inverse: impl Fn(&mut [Complex<T>]),
) -> Vec<T> {
    let mut spectrum = magnitude.to_vec();
    forward(&mut spectrum);
    let mut best = vec![T::zero(); magnitude.len()];
    for mut kernel in stencils {
        let count = kernel.iter().fold(T::zero(), |acc, z| acc + z.re);
        forward(&mut kernel);
        let mut avg: Vec<_> = spectrum.iter().zip(&kernel).map(|(a, b)| a * b).collect();
        inverse(&mut avg);
        for (b, a) in best.iter_mut().zip(&avg) {
            *b = b.max((a.re / count).max(T::zero()));
        }
    }
    best
}

/// Pointwise supremum over `radii` of periodic interval averages of `|f|`.
pub fn maximal_function_1d<T: Real>(f: &ComplexField1D<T>, radii: &[T]) -> Result<Vec<T>> {
    check_radii(radii)?;
    let n = f.grid().len();
    let h = f.grid().spacing();
    let fft = Fft1::new(n);
    let magnitude: Vec<_> = f.samples().iter().map(|z| Complex::new(z.norm(), T::zero())).collect();
    let stencils = radii.iter().map(|&r| {
        (0..n)
            .map(|m| {
                let d = lit::<T>(signed_index(m, n) as f64) * h;
                Complex::new(if d.abs() <= r { T::one() } else { T::zero() }, T::zero())
            })
            .collect::<Vec<_>>()
    });
    Ok(sup_of_averages(&magnitude, stencils, |b| fft.forward(b), |b| fft.inverse(b)))
}

/// Pointwise supremum over `radii` of periodic disc averages of `|f|`.
pub fn maximal_function_2d<T: Real>(f: &ComplexField2D<T>, radii: &[T]) -> Result<Vec<T>> {
    check_radii(radii)?;
    let grid = f.grid();
    let (n1, n2) = grid.shape();
    let (h1, h2) = grid.spacings();
    let fft = Fft2::new(n1, n2);
    let magnitude: Vec<_> = f.samples().iter().map(|z| Complex::new(z.norm(), T::zero())).collect();
    let stencils = radii.iter().map(|&r| {
        let mut k = vec![Complex::new(T::zero(), T::zero()); n1 * n2];
        for m1 in 0..n1 {
            let d1 = from_usize::<T>(signed_index(m1, n1).unsigned_abs()) * h1;
            for m2 in 0..n2 {
                let d2 = from_usize::<T>(signed_index(m2, n2).unsigned_abs()) * h2;
                if d1 * d1 + d2 * d2 <= r * r {
                    k[m1 * n2 + m2] = Complex::new(T::one(), T::zero());
                }
            }
        }
        k
    });
    Ok(sup_of_averages(&magnitude, stencils, |b| fft.forward(b), |b| fft.inverse(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::{Grid1D, Grid2D};

    #[test]
    fn constant_magnitude_is_fixed() {
        let g = Grid2D::<f64>::square(32, 4.0).unwrap();
        let f = ComplexField2D::from_fn(g, |x, y| Complex::from_polar(2.5, x - y)).unwrap();
        let m = maximal_function_2d(&f, &default_radii(0.25, 4.0)).unwrap();
        assert!(m.iter().all(|v| (v - 2.5).abs() < 1e-12));
        let g1 = Grid1D::<f64>::new(64, 4.0).unwrap();
        let f1 = ComplexField1D::from_fn(g1, |x| Complex::from_polar(0.5, x)).unwrap();
        let m1 = maximal_function_1d(&f1, &[0.1, 0.7]).unwrap();
        assert!(m1.iter().all(|v| (v - 0.5).abs() < 1e-14));
    }

    #[test]
    fn zero_and_empty() {
        let g = Grid2D::<f64>::square(16, 2.0).unwrap();
        let m = maximal_function_2d(&ComplexField2D::zeros(g), &[0.5]).unwrap();
        assert!(m.iter().all(|v| *v == 0.0));
        assert!(matches!(maximal_function_2d(&ComplexField2D::zeros(g), &[]), Err(Error::EmptyRadii)));
    }

    #[test]
    fn smallest_radius_is_identity_and_dominates() {
        let g = Grid2D::<f64>::square(32, 4.0).unwrap();
        let f = ComplexField2D::from_fn(g, |x, y| Complex::new((-(x * x + y * y)).exp(), 0.0)).unwrap();
        let m = maximal_function_2d(&f, &[0.1]).unwrap();
        for (a, b) in m.iter().zip(f.samples()) {
            assert!((a - b.norm()).abs() < 1e-14);
        }
        let mut radii = vec![0.1];
        radii.extend(default_radii(0.25, 4.0));
        let big = maximal_function_2d(&f, &radii).unwrap();
        for (a, b) in big.iter().zip(f.samples()) {
            assert!(*a >= b.norm() - 1e-14);
        }
    }

    #[test]
    fn far_field_sees_the_bump() {
        let g = Grid1D::<f64>::new(128, 16.0).unwrap();
        let f = ComplexField1D::from_fn(g, |x| Complex::new(if x.abs() < 0.5 { 1.0 } else { 0.0 }, 0.0)).unwrap();
        let m = maximal_function_1d(&f, &default_radii(0.25, 16.0)).unwrap();
        // At x = 4 the radius-4 interval holds 2 of the 3 bump nodes among 33.
        let j = 80;
        assert!((g.node(j) - 4.0).abs() < 1e-12);
        assert!((m[j] - 2.0 / 33.0).abs() < 1e-12);
    }
}
