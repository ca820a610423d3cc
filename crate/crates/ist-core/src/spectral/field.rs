//! Complex samples attached to a grid.

use num_complex::Complex;

use super::grid::{Grid1D, Grid2D};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_finite<T: Real>(samples: &[Complex<T>]) -> Result<()> {
    match samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// Weighted discrete L2 norm `sqrt(w * sum |f|^2)`, summed in index order.
pub fn weighted_l2<T: Real>(samples: &[Complex<T>], weight: T) -> T {
    let s = samples.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
    (s * weight).sqrt()
}

/// Weighted discrete L1 norm.
pub fn weighted_l1<T: Real>(samples: &[Complex<T>], weight: T) -> T {
    samples.iter().fold(T::zero(), |acc, z| acc + z.norm()) * weight
}

pub fn sup_norm<T: Real>(samples: &[Complex<T>]) -> T {
    samples.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
}

/// Weighted L2 norm of the difference of two sample vectors.
pub fn weighted_l2_diff<T: Real>(a: &[Complex<T>], b: &[Complex<T>], weight: T) -> T {
    let s = a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + (x - y).norm_sqr());
    (s * weight).sqrt()
}

/// Samples of a complex function on a [`Grid1D`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexField1D<T> {
    grid: Grid1D<T>,
    samples: Vec<Complex<T>>,
}

impl<T: Real> ComplexField1D<T> {
    pub fn new(grid: Grid1D<T>, samples: Vec<Complex<T>>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: samples.len() });
        }
        check_finite(&samples)?;
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: Grid1D<T>) -> Self {
        Self { grid, samples: vec![Complex::new(T::zero(), T::zero()); grid.len()] }
    }

    pub fn from_fn(grid: Grid1D<T>, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let samples = (0..grid.len()).map(|j| f(grid.node(j))).collect();
        Self::new(grid, samples)
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    #[inline]
    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex<T>> {
        self.samples
    }

    pub fn l2_norm(&self) -> T {
        weighted_l2(&self.samples, self.grid.spacing())
    }

    pub fn l1_norm(&self) -> T {
        weighted_l1(&self.samples, self.grid.spacing())
    }

    pub fn sup_norm(&self) -> T {
        sup_norm(&self.samples)
    }

    /// Returns `c * self` sample-wise.
    pub fn scaled(&self, c: T) -> Self {
        Self { grid: self.grid, samples: self.samples.iter().map(|z| z * c).collect() }
    }
}

/// Samples of a complex function on a [`Grid2D`], row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexField2D<T> {
    grid: Grid2D<T>,
    samples: Vec<Complex<T>>,
}

impl<T: Real> ComplexField2D<T> {
    pub fn new(grid: Grid2D<T>, samples: Vec<Complex<T>>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: samples.len() });
        }
        check_finite(&samples)?;
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: Grid2D<T>) -> Self {
        Self { grid, samples: vec![Complex::new(T::zero(), T::zero()); grid.len()] }
    }

    pub fn from_fn(grid: Grid2D<T>, f: impl Fn(T, T) -> Complex<T>) -> Result<Self> {
        let (n1, n2) = grid.shape();
        let mut samples = Vec::with_capacity(n1 * n2);
        for j1 in 0..n1 {
            for j2 in 0..n2 {
                let (x1, x2) = grid.node(j1, j2);
                samples.push(f(x1, x2));
            }
        }
        Self::new(grid, samples)
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    #[inline]
    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex<T>> {
        self.samples
    }

    pub fn l2_norm(&self) -> T {
        weighted_l2(&self.samples, self.grid.cell_area())
    }

    pub fn l1_norm(&self) -> T {
        weighted_l1(&self.samples, self.grid.cell_area())
    }

    pub fn sup_norm(&self) -> T {
        sup_norm(&self.samples)
    }

    pub fn scaled(&self, c: T) -> Self {
        Self { grid: self.grid, samples: self.samples.iter().map(|z| z * c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan_and_wrong_length() {
        let g = Grid1D::<f64>::new(8, 1.0).unwrap();
        let mut s = vec![Complex::new(0.0, 0.0); 8];
        s[3].im = f64::NAN;
        assert!(matches!(ComplexField1D::new(g, s), Err(Error::NonFinite { index: 3 })));
        assert!(ComplexField1D::new(g, vec![Complex::new(0.0, 0.0); 7]).is_err());
    }

    #[test]
    fn gaussian_norms() {
        let g = Grid1D::<f64>::new(512, 8.0).unwrap();
        let f = ComplexField1D::from_fn(g, |x| Complex::new((-x * x).exp(), 0.0)).unwrap();
        let pi = std::f64::consts::PI;
        assert!((f.l1_norm() - pi.sqrt()).abs() < 1e-12);
        assert!((f.l2_norm() - (pi / 2.0).sqrt().sqrt()).abs() < 1e-12);
        assert_eq!(f.sup_norm(), 1.0);
    }

    #[test]
    fn row_major_layout() {
        let g = Grid2D::<f64>::new(8, 16, 1.0, 2.0).unwrap();
        let f = ComplexField2D::from_fn(g, |x1, x2| Complex::new(x1, x2)).unwrap();
        let (x1, x2) = g.node(3, 5);
        assert_eq!(f.samples()[g.index(3, 5)], Complex::new(x1, x2));
        assert_eq!(f.samples()[5], Complex::new(-1.0, -2.0 + 5.0 * 0.25));
    }
}
