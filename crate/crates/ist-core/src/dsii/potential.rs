use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::spectral::{ComplexField2D, FourierMultiplierSpec, Grid2D, Spectral2D};

/// Planar potential `q(z)` with its norms computed once.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential2D<T> {
    field: ComplexField2D<T>,
    l1: T,
    l2: T,
    h1: T,
}

impl<T: Real> Potential2D<T> {
    pub fn new(field: ComplexField2D<T>) -> Self {
        let grid = *field.grid();
        let sp = Spectral2D::new(grid);
        let area = grid.cell_area();
        // H^1 surrogate: |q|_2^2 + |d q/dx1|_2^2 + |d q/dx2|_2^2 with spectral derivatives.
        let mut grad = T::zero();
        for axis in 0..2 {
            let spec = FourierMultiplierSpec::from_fn_2d(
                &grid,
                |a, b| Complex::new(T::zero(), if axis == 0 { a } else { b }),
                Complex::new(T::zero(), T::zero()),
            );
            let mut buf = field.samples().to_vec();
            sp.apply_in_place(&spec, &mut buf);
            grad = grad + buf.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()) * area;
        }
        let (l1, l2) = (field.l1_norm(), field.l2_norm());
        Self { h1: (l2 * l2 + grad).sqrt(), l1, l2, field }
    }

    pub fn zero(grid: Grid2D<T>) -> Self {
        Self::new(ComplexField2D::zeros(grid))
    }

    /// `A e^{-|z|^2 / w^2}`.
    pub fn gaussian(grid: Grid2D<T>, amplitude: T, width: T) -> Result<Self> {
        if !(width > T::zero()) {
            return Err(Error::InvalidParameter("width must be positive".into()));
        }
        let w2 = width * width;
        let field = ComplexField2D::from_fn(grid, |x1, x2| {
            Complex::new(amplitude * (-(x1 * x1 + x2 * x2) / w2).exp(), T::zero())
        })?;
        Ok(Self::new(field))
    }

    /// `A e^{-|z - c|^2 / w^2} e^{i (p1 x1 + p2 x2)}`: a moving, off-center packet.
    pub fn packet(grid: Grid2D<T>, amplitude: T, width: T, center: (T, T), momentum: (T, T)) -> Result<Self> {
        if !(width > T::zero()) {
            return Err(Error::InvalidParameter("width must be positive".into()));
        }
        let w2 = width * width;
        let field = ComplexField2D::from_fn(grid, |x1, x2| {
            let (d1, d2) = (x1 - center.0, x2 - center.1);
            Complex::from_polar(amplitude * (-(d1 * d1 + d2 * d2) / w2).exp(), momentum.0 * x1 + momentum.1 * x2)
        })?;
        Ok(Self::new(field))
    }

    #[inline]
    pub fn field(&self) -> &ComplexField2D<T> {
        &self.field
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D<T> {
        self.field.grid()
    }

    #[inline]
    pub fn samples(&self) -> &[Complex<T>] {
        self.field.samples()
    }

    #[inline]
    pub fn l1_norm(&self) -> T {
        self.l1
    }

    #[inline]
    pub fn l2_norm(&self) -> T {
        self.l2
    }

    #[inline]
    pub fn h1_norm(&self) -> T {
        self.h1
    }

    pub fn scaled(&self, c: T) -> Self {
        Self::new(self.field.scaled(c))
    }
}

/// `e_{k}(z) = e^{2 i (k1 x1 - k2 x2)}` at every node of `grid`, for `k` on its dual lattice.
///
/// Built from integer lattice offsets, so the phase is exactly grid periodic.
pub fn lattice_phase<T: Real>(grid: &Grid2D<T>, k: Complex<T>) -> Result<Vec<Complex<T>>> {
    let (o1, o2) = grid
        .dual()
        .lattice_offset(k.re, k.im)
        .ok_or(Error::LatticeMismatch { k1: crate::scalar::to_f64(k.re), k2: crate::scalar::to_f64(k.im) })?;
    let (n1, n2) = grid.shape();
    let roots = |n: usize| -> Vec<Complex<T>> {
        let step = (T::PI() + T::PI()) / lit::<T>(n as f64);
        (0..n).map(|m| Complex::from_polar(T::one(), step * lit::<T>(m as f64))).collect()
    };
    let (r1, r2) = (roots(n1), roots(n2));
    let sign = if (o1 + o2).rem_euclid(2) == 0 { T::one() } else { -T::one() };
    let mut out = Vec::with_capacity(n1 * n2);
    for j1 in 0..n1 {
        let a = r1[(o1 * j1 as isize).rem_euclid(n1 as isize) as usize] * sign;
        for j2 in 0..n2 {
            out.push(a * r2[(o2 * j2 as isize).rem_euclid(n2 as isize) as usize].conj());
        }
    }
    Ok(out)
}
