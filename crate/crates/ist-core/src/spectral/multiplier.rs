//! Fourier multiplier symbols sampled on the FFT frequency lattice.

use num_complex::Complex;

use super::grid::{Grid1D, Grid2D};
use crate::scalar::{lit, Real};

/// Which Cauchy projector: `C+` (positive frequencies) or `C-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CauchySign {
    Plus,
    Minus,
}

/// Weight given to the zero frequency by the Cauchy projectors.
///
/// `Split` gives `1/2` to `C+` and `-1/2` to `C-`; `AssignToPlus` gives `1` and `0`.
/// Both keep `C+ - C- = I`; only `AssignToPlus` makes the projectors idempotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ZeroModePolicy {
    #[default]
    Split,
    AssignToPlus,
}

/// Symbol values in FFT bin order, with an explicit value at the zero frequency.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierMultiplierSpec<T> {
    symbol: Vec<Complex<T>>,
}

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

impl<T: Real> FourierMultiplierSpec<T> {
    /// Samples `f(xi)` at every nonzero frequency of `grid` and puts `zero_mode` at `xi = 0`.
    pub fn from_fn_1d(grid: &Grid1D<T>, f: impl Fn(T) -> Complex<T>, zero_mode: Complex<T>) -> Self {
        let symbol = (0..grid.len()).map(|m| if m == 0 { zero_mode } else { f(grid.frequency(m)) }).collect();
        Self::checked(symbol)
    }

    /// Samples `f(xi1, xi2)` at every nonzero frequency pair and puts `zero_mode` at the origin.
    pub fn from_fn_2d(grid: &Grid2D<T>, f: impl Fn(T, T) -> Complex<T>, zero_mode: Complex<T>) -> Self {
        let (n1, n2) = grid.shape();
        let mut symbol = Vec::with_capacity(n1 * n2);
        for m1 in 0..n1 {
            for m2 in 0..n2 {
                symbol.push(if m1 == 0 && m2 == 0 {
                    zero_mode
                } else {
                    let (a, b) = grid.frequency(m1, m2);
                    f(a, b)
                });
            }
        }
        Self::checked(symbol)
    }

    fn checked(symbol: Vec<Complex<T>>) -> Self {
        assert!(symbol.iter().all(|z| z.re.is_finite() && z.im.is_finite()), "multiplier symbol must be finite");
        Self { symbol }
    }

    #[inline]
    pub fn symbol(&self) -> &[Complex<T>] {
        &self.symbol
    }

    #[inline]
    pub fn zero_mode(&self) -> Complex<T> {
        self.symbol[0]
    }

    /// Multiplies a spectrum in FFT order by the symbol.
    pub fn apply_spectrum(&self, spectrum: &mut [Complex<T>]) {
        spectrum.iter_mut().zip(&self.symbol).for_each(|(z, s)| *z = *z * s);
    }

    /// Pointwise product of two symbols on the same lattice.
    pub fn compose(&self, other: &Self) -> Self {
        Self { symbol: self.symbol.iter().zip(&other.symbol).map(|(a, b)| a * b).collect() }
    }

    /// `C+`: indicator of `xi > 0`; `C-`: minus the indicator of `xi < 0`.
    pub fn cauchy(grid: &Grid1D<T>, sign: CauchySign, policy: ZeroModePolicy) -> Self {
        let (one, zero, half) = (T::one(), T::zero(), lit::<T>(0.5));
        let zero_mode = match (sign, policy) {
            (CauchySign::Plus, ZeroModePolicy::Split) => c(half, zero),
            (CauchySign::Minus, ZeroModePolicy::Split) => c(-half, zero),
            (CauchySign::Plus, ZeroModePolicy::AssignToPlus) => c(one, zero),
            (CauchySign::Minus, ZeroModePolicy::AssignToPlus) => c(zero, zero),
        };
        Self::from_fn_1d(
            grid,
            |xi| match sign {
                CauchySign::Plus if xi > zero => c(one, zero),
                CauchySign::Minus if xi < zero => c(-one, zero),
                _ => c(zero, zero),
            },
            zero_mode,
        )
    }

    /// Free Schrodinger propagator `e^{-i t xi^2}`.
    pub fn schrodinger(grid: &Grid1D<T>, t: T) -> Self {
        Self::from_fn_1d(grid, |xi| Complex::from_polar(T::one(), -t * xi * xi), c(T::one(), T::zero()))
    }

    /// Symbol `(i/2)(xi1 + i xi2)` of d/dzbar.
    pub fn dbar(grid: &Grid2D<T>) -> Self {
        let half = lit::<T>(0.5);
        Self::from_fn_2d(grid, |a, b| c(-half * b, half * a), c(T::zero(), T::zero()))
    }

    /// Symbol `(i/2)(xi1 - i xi2)` of d/dz.
    pub fn d(grid: &Grid2D<T>) -> Self {
        let half = lit::<T>(0.5);
        Self::from_fn_2d(grid, |a, b| c(half * b, half * a), c(T::zero(), T::zero()))
    }

    /// Solid Cauchy transform: inverse of d/dzbar on nonzero modes, zero at the origin.
    pub fn dbar_inverse(grid: &Grid2D<T>) -> Self {
        let two = lit::<T>(2.0);
        Self::from_fn_2d(grid, |a, b| c(T::zero(), -two) / c(a, b), c(T::zero(), T::zero()))
    }

    /// Conjugate solid Cauchy transform: inverse of d/dz on nonzero modes.
    pub fn d_inverse(grid: &Grid2D<T>) -> Self {
        let two = lit::<T>(2.0);
        Self::from_fn_2d(grid, |a, b| c(T::zero(), -two) / c(a, -b), c(T::zero(), T::zero()))
    }

    /// Beurling transform `(xi1 - i xi2) / (xi1 + i xi2)`.
    pub fn beurling(grid: &Grid2D<T>) -> Self {
        Self::from_fn_2d(grid, |a, b| c(a, -b) / c(a, b), c(T::zero(), T::zero()))
    }

    /// Linear DS II propagator `e^{-i t (xi1^2 - xi2^2)}`.
    pub fn hyperbolic_schrodinger(grid: &Grid2D<T>, t: T) -> Self {
        Self::from_fn_2d(grid, |a, b| Complex::from_polar(T::one(), -t * (a * a - b * b)), c(T::one(), T::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_symbols_partition_unity() {
        let g = Grid1D::<f64>::new(32, 3.0).unwrap();
        for policy in [ZeroModePolicy::Split, ZeroModePolicy::AssignToPlus] {
            let p = FourierMultiplierSpec::cauchy(&g, CauchySign::Plus, policy);
            let m = FourierMultiplierSpec::cauchy(&g, CauchySign::Minus, policy);
            for (a, b) in p.symbol().iter().zip(m.symbol()) {
                assert_eq!(a - b, Complex::new(1.0, 0.0));
            }
        }
    }

    #[test]
    fn nyquist_bin_is_negative_frequency() {
        let g = Grid1D::<f64>::new(16, 1.0).unwrap();
        let p = FourierMultiplierSpec::cauchy(&g, CauchySign::Plus, ZeroModePolicy::Split);
        assert_eq!(p.symbol()[8], Complex::new(0.0, 0.0));
        assert_eq!(p.symbol()[7], Complex::new(1.0, 0.0));
    }

    #[test]
    fn dbar_times_inverse_is_one_off_origin() {
        let g = Grid2D::<f64>::new(16, 8, 2.0, 1.0).unwrap();
        let prod = FourierMultiplierSpec::dbar(&g).compose(&FourierMultiplierSpec::dbar_inverse(&g));
        for (i, z) in prod.symbol().iter().enumerate() {
            let expect = if i == 0 { 0.0 } else { 1.0 };
            assert!((z - Complex::new(expect, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn beurling_is_unimodular() {
        let g = Grid2D::<f64>::square(16, 2.0).unwrap();
        let s = FourierMultiplierSpec::beurling(&g);
        for z in &s.symbol()[1..] {
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
    }
}
