use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::spectral::{ComplexField1D, Grid1D};

/// Potential `q(x)` sampled on `[-L, L)`, with the mass assumed to lie outside.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential1D<T> {
    field: ComplexField1D<T>,
    tail_mass: T,
}

impl<T: Real> Potential1D<T> {
    pub fn new(field: ComplexField1D<T>, tail_mass: T) -> Result<Self> {
        if !(tail_mass.is_finite() && tail_mass >= T::zero()) {
            return Err(Error::InvalidParameter("tail mass must be finite and non-negative".into()));
        }
        Ok(Self { field, tail_mass })
    }

    /// Compactly supported potential: zero tail mass.
    pub fn compact(field: ComplexField1D<T>) -> Self {
        Self { field, tail_mass: T::zero() }
    }

    pub fn zero(grid: Grid1D<T>) -> Self {
        Self::compact(ComplexField1D::zeros(grid))
    }

    /// `A e^{-(x/w)^2}` with its analytic tail mass beyond `|x| > L`.
    pub fn gaussian(grid: Grid1D<T>, amplitude: T, width: T) -> Result<Self> {
        let field = ComplexField1D::from_fn(grid, |x| {
            let u = x / width;
            Complex::new(amplitude * (-u * u).exp(), T::zero())
        })?;
        let u = grid.half_width() / width;
        // int_{|x|>L} e^{-x^2/w^2} <= w e^{-u^2} / u
        let tail = amplitude.abs() * width * (-u * u).exp() / u;
        Self::new(field, tail)
    }

    /// `A` on the closed cell range `[x_lo - h/2, x_hi + h/2]`, zero elsewhere.
    pub fn box_cells(grid: Grid1D<T>, amplitude: Complex<T>, first: usize, last: usize) -> Result<Self> {
        let samples = (0..grid.len())
            .map(|j| if (first..=last).contains(&j) { amplitude } else { Complex::new(T::zero(), T::zero()) })
            .collect();
        Ok(Self::compact(ComplexField1D::new(grid, samples)?))
    }

    /// `A sech(x / w)`.
    pub fn sech(grid: Grid1D<T>, amplitude: T, width: T) -> Result<Self> {
        let field = ComplexField1D::from_fn(grid, |x| Complex::new(amplitude / (x / width).cosh(), T::zero()))?;
        let tail = lit::<T>(4.0) * amplitude.abs() * width * (-grid.half_width() / width).exp();
        Self::new(field, tail)
    }

    #[inline]
    pub fn field(&self) -> &ComplexField1D<T> {
        &self.field
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        self.field.grid()
    }

    #[inline]
    pub fn samples(&self) -> &[Complex<T>] {
        self.field.samples()
    }

    #[inline]
    pub fn tail_mass(&self) -> T {
        self.tail_mass
    }

    pub fn l1_norm(&self) -> T {
        self.field.l1_norm()
    }

    pub fn l2_norm(&self) -> T {
        self.field.l2_norm()
    }

    pub fn scaled(&self, c: T) -> Self {
        Self { field: self.field.scaled(c), tail_mass: self.tail_mass * c.abs() }
    }
}
