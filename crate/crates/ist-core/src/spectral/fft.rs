//! FFT plans for one- and two-dimensional grids.
//!
//! Forward transforms are unnormalized with kernel `e^{-2 pi i m j / n}`;
//! inverse transforms divide by the point count.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::scalar::{from_usize, Real};

/// Kernel sign of a transform along one axis: `e^{sign 2 pi i m j / n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn direction(self) -> FftDirection {
        match self {
            Sign::Minus => FftDirection::Forward,
            Sign::Plus => FftDirection::Inverse,
        }
    }
}

#[derive(Clone)]
struct AxisPlans<T> {
    minus: Arc<dyn Fft<T>>,
    plus: Arc<dyn Fft<T>>,
}

impl<T: Real> AxisPlans<T> {
    fn new(planner: &mut FftPlanner<T>, n: usize) -> Self {
        Self { minus: planner.plan_fft(n, Sign::Minus.direction()), plus: planner.plan_fft(n, Sign::Plus.direction()) }
    }

    fn get(&self, sign: Sign) -> &Arc<dyn Fft<T>> {
        match sign {
            Sign::Minus => &self.minus,
            Sign::Plus => &self.plus,
        }
    }
}

/// Immutable, shareable 1D plan pair.
#[derive(Clone)]
pub struct Fft1<T> {
    n: usize,
    plans: AxisPlans<T>,
}

impl<T: Real> Fft1<T> {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, plans: AxisPlans::new(&mut planner, n) }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Unnormalized transform with the given kernel sign, in place.
    pub fn transform(&self, buf: &mut [Complex<T>], sign: Sign) {
        debug_assert_eq!(buf.len() % self.n, 0);
        self.plans.get(sign).process(buf);
    }

    pub fn forward(&self, buf: &mut [Complex<T>]) {
        self.transform(buf, Sign::Minus);
    }

    pub fn inverse(&self, buf: &mut [Complex<T>]) {
        self.transform(buf, Sign::Plus);
        let s = T::one() / from_usize::<T>(self.n);
        buf.iter_mut().for_each(|z| *z = *z * s);
    }
}

/// Immutable, shareable 2D plan set over a row-major `n1 x n2` array.
#[derive(Clone)]
pub struct Fft2<T> {
    n1: usize,
    n2: usize,
    axis1: AxisPlans<T>,
    axis2: AxisPlans<T>,
}

fn transpose<T: Copy>(src: &[T], dst: &mut [T], rows: usize, cols: usize) {
    const B: usize = 16;
    for r0 in (0..rows).step_by(B) {
        for c0 in (0..cols).step_by(B) {
            for r in r0..(r0 + B).min(rows) {
                for c in c0..(c0 + B).min(cols) {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}

impl<T: Real> Fft2<T> {
    pub fn new(n1: usize, n2: usize) -> Self {
        let mut planner = FftPlanner::new();
        let axis1 = AxisPlans::new(&mut planner, n1);
        let axis2 = AxisPlans::new(&mut planner, n2);
        Self { n1, n2, axis1, axis2 }
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    /// Unnormalized transform with independent kernel signs per axis.
    pub fn transform(&self, buf: &mut [Complex<T>], sign1: Sign, sign2: Sign) {
        let (n1, n2) = (self.n1, self.n2);
        debug_assert_eq!(buf.len(), n1 * n2);
        self.axis2.get(sign2).process(buf);
        let mut t = vec![Complex::new(T::zero(), T::zero()); n1 * n2];
        transpose(buf, &mut t, n1, n2);
        self.axis1.get(sign1).process(&mut t);
        transpose(&t, buf, n2, n1);
    }

    pub fn forward(&self, buf: &mut [Complex<T>]) {
        self.transform(buf, Sign::Minus, Sign::Minus);
    }

    pub fn inverse(&self, buf: &mut [Complex<T>]) {
        self.transform(buf, Sign::Plus, Sign::Plus);
        let s = T::one() / from_usize::<T>(self.n1 * self.n2);
        buf.iter_mut().for_each(|z| *z = *z * s);
    }
}

/// `(-1)^j` as a scalar.
#[inline]
pub(crate) fn alternating<T: Real>(j: usize) -> T {
    if j % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Centered DFT `out_m = sum_j f_j e^{sign 2 pi i (m - n/2)(j - n/2) / n}`, in place.
pub fn centered_transform_1d<T: Real>(fft: &Fft1<T>, buf: &mut [Complex<T>], sign: Sign) {
    buf.iter_mut().enumerate().for_each(|(j, z)| *z = *z * alternating::<T>(j));
    fft.transform(buf, sign);
    buf.iter_mut().enumerate().for_each(|(m, z)| *z = *z * alternating::<T>(m));
}

/// Two-dimensional centered DFT with per-axis kernel signs, in place.
pub fn centered_transform_2d<T: Real>(fft: &Fft2<T>, buf: &mut [Complex<T>], sign1: Sign, sign2: Sign) {
    let (_, n2) = fft.shape();
    let flip = |buf: &mut [Complex<T>]| {
        buf.iter_mut().enumerate().for_each(|(idx, z)| {
            *z = *z * alternating::<T>(idx / n2 + idx % n2);
        })
    };
    flip(buf);
    fft.transform(buf, sign1, sign2);
    flip(buf);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, seed: u64) -> Vec<Complex<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    }

    fn rel_err(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
        (num / den).sqrt()
    }

    #[test]
    fn round_trip_1d() {
        let fft = Fft1::<f64>::new(64);
        let f = random(64, 1);
        let mut g = f.clone();
        fft.forward(&mut g);
        fft.inverse(&mut g);
        assert!(rel_err(&g, &f) < 1e-13);
    }

    #[test]
    fn round_trip_2d() {
        let fft = Fft2::<f64>::new(16, 32);
        let f = random(16 * 32, 2);
        let mut g = f.clone();
        fft.forward(&mut g);
        fft.inverse(&mut g);
        assert!(rel_err(&g, &f) < 1e-13);
    }

    #[test]
    fn centered_matches_direct_sum() {
        let n = 16;
        let fft = Fft1::<f64>::new(n);
        let f = random(n, 3);
        let mut g = f.clone();
        centered_transform_1d(&fft, &mut g, Sign::Plus);
        let c = (n / 2) as f64;
        for m in 0..n {
            let direct: Complex<f64> = (0..n)
                .map(|j| {
                    let ph = 2.0 * std::f64::consts::PI * (m as f64 - c) * (j as f64 - c) / n as f64;
                    f[j] * Complex::from_polar(1.0, ph)
                })
                .sum();
            assert!((direct - g[m]).norm() < 1e-12);
        }
    }

    #[test]
    fn mixed_sign_2d_matches_direct_sum() {
        let (n1, n2) = (8, 16);
        let fft = Fft2::<f64>::new(n1, n2);
        let f = random(n1 * n2, 4);
        let mut g = f.clone();
        centered_transform_2d(&fft, &mut g, Sign::Plus, Sign::Minus);
        let tau = 2.0 * std::f64::consts::PI;
        for m1 in 0..n1 {
            for m2 in 0..n2 {
                let mut direct = Complex::new(0.0, 0.0);
                for j1 in 0..n1 {
                    for j2 in 0..n2 {
                        let a = (m1 as f64 - 4.0) * (j1 as f64 - 4.0) / n1 as f64;
                        let b = (m2 as f64 - 8.0) * (j2 as f64 - 8.0) / n2 as f64;
                        direct += f[j1 * n2 + j2] * Complex::from_polar(1.0, tau * (a - b));
                    }
                }
                assert!((direct - g[m1 * n2 + m2]).norm() < 1e-11);
            }
        }
    }
}
