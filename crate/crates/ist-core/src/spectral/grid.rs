//! Uniform periodic grids and their dual lattices.

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

fn check_count(n: usize, axis: &str) -> Result<()> {
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::InvalidGrid(format!("{axis} point count {n} must be a power of two and at least 8")));
    }
    Ok(())
}

fn check_half_width<T: Real>(l: T, axis: &str) -> Result<()> {
    if !(l.is_finite() && l > T::zero()) {
        return Err(Error::InvalidGrid(format!("{axis} half width must be positive and finite")));
    }
    Ok(())
}

fn close<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= lit::<T>(1e-9) * a.abs().max(b.abs())
}

/// Signed frequency index of FFT bin `m` on an `n`-point grid.
#[inline]
pub fn signed_index(m: usize, n: usize) -> isize {
    if m < n / 2 {
        m as isize
    } else {
        m as isize - n as isize
    }
}

/// Nodes `x_j = -L + j h`, `j = 0..n`, with `h = 2L / n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D<T> {
    n: usize,
    half_width: T,
}

impl<T: Real> Grid1D<T> {
    pub fn new(n: usize, half_width: T) -> Result<Self> {
        check_count(n, "grid")?;
        check_half_width(half_width, "grid")?;
        Ok(Self { n, half_width })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn half_width(&self) -> T {
        self.half_width
    }

    #[inline]
    pub fn spacing(&self) -> T {
        (self.half_width + self.half_width) / from_usize(self.n)
    }

    #[inline]
    pub fn node(&self, j: usize) -> T {
        -self.half_width + from_usize::<T>(j) * self.spacing()
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Spacing `pi / L` of the angular frequencies resolved by the grid.
    #[inline]
    pub fn frequency_spacing(&self) -> T {
        T::PI() / self.half_width
    }

    /// Angular frequency of FFT bin `m`.
    #[inline]
    pub fn frequency(&self, m: usize) -> T {
        lit::<T>(signed_index(m, self.n) as f64) * self.frequency_spacing()
    }

    /// Spectral grid for phases `e^{2 i lambda x}`: spacing `pi / (2L)`, same point count.
    pub fn spectral_dual(&self) -> Grid1D<T> {
        let quarter = from_usize::<T>(self.n) * T::PI() / (lit::<T>(4.0) * self.half_width);
        Grid1D { n: self.n, half_width: quarter }
    }

    /// True when `other` is the spectral dual of `self` up to rounding.
    pub fn is_dual_of(&self, other: &Grid1D<T>) -> bool {
        let d = other.spectral_dual();
        self.n == d.n && close(self.half_width, d.half_width)
    }

    /// True when both grids describe the same nodes up to rounding.
    pub fn matches(&self, other: &Grid1D<T>) -> bool {
        self.n == other.n && close(self.half_width, other.half_width)
    }

    /// Index of the cell `[x_j, x_{j+1})` containing `x`, if inside the grid.
    pub fn locate(&self, x: T) -> Option<(usize, T)> {
        let s = (x + self.half_width) / self.spacing();
        if !(s >= T::zero()) {
            return None;
        }
        let j = s.floor().to_usize()?;
        if j + 1 >= self.n {
            return None;
        }
        Some((j, s - from_usize(j)))
    }
}

/// Product lattice `z = x1 + i x2`; samples are stored row-major with `x2` fastest.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D<T> {
    n1: usize,
    n2: usize,
    half_width1: T,
    half_width2: T,
}

impl<T: Real> Grid2D<T> {
    pub fn new(n1: usize, n2: usize, half_width1: T, half_width2: T) -> Result<Self> {
        check_count(n1, "axis 1")?;
        check_count(n2, "axis 2")?;
        check_half_width(half_width1, "axis 1")?;
        check_half_width(half_width2, "axis 2")?;
        Ok(Self { n1, n2, half_width1, half_width2 })
    }

    pub fn square(n: usize, half_width: T) -> Result<Self> {
        Self::new(n, n, half_width, half_width)
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn half_widths(&self) -> (T, T) {
        (self.half_width1, self.half_width2)
    }

    #[inline]
    pub fn spacings(&self) -> (T, T) {
        (
            (self.half_width1 + self.half_width1) / from_usize(self.n1),
            (self.half_width2 + self.half_width2) / from_usize(self.n2),
        )
    }

    /// Area element `h1 h2` of the trapezoid rule.
    #[inline]
    pub fn cell_area(&self) -> T {
        let (h1, h2) = self.spacings();
        h1 * h2
    }

    #[inline]
    pub fn index(&self, j1: usize, j2: usize) -> usize {
        j1 * self.n2 + j2
    }

    #[inline]
    pub fn node(&self, j1: usize, j2: usize) -> (T, T) {
        let (h1, h2) = self.spacings();
        (-self.half_width1 + from_usize::<T>(j1) * h1, -self.half_width2 + from_usize::<T>(j2) * h2)
    }

    /// Angular frequency spacings `(pi / L1, pi / L2)`.
    #[inline]
    pub fn frequency_spacings(&self) -> (T, T) {
        (T::PI() / self.half_width1, T::PI() / self.half_width2)
    }

    /// Angular frequencies of FFT bin `(m1, m2)`.
    #[inline]
    pub fn frequency(&self, m1: usize, m2: usize) -> (T, T) {
        let (d1, d2) = self.frequency_spacings();
        (lit::<T>(signed_index(m1, self.n1) as f64) * d1, lit::<T>(signed_index(m2, self.n2) as f64) * d2)
    }

    /// Lattice of spectral parameters `k` for which `e_k(z) = e^{2i(k1 x1 - k2 x2)}` is grid periodic.
    pub fn dual(&self) -> Grid2D<T> {
        let four = lit::<T>(4.0);
        Grid2D {
            n1: self.n1,
            n2: self.n2,
            half_width1: from_usize::<T>(self.n1) * T::PI() / (four * self.half_width1),
            half_width2: from_usize::<T>(self.n2) * T::PI() / (four * self.half_width2),
        }
    }

    pub fn is_dual_of(&self, other: &Grid2D<T>) -> bool {
        self.matches(&other.dual())
    }

    pub fn matches(&self, other: &Grid2D<T>) -> bool {
        self.n1 == other.n1
            && self.n2 == other.n2
            && close(self.half_width1, other.half_width1)
            && close(self.half_width2, other.half_width2)
    }

    /// Lattice offsets `(m1 - n1/2, m2 - n2/2)` of the node nearest to `(k1, k2)`,
    /// or `None` when `(k1, k2)` is not a node.
    pub fn lattice_offset(&self, k1: T, k2: T) -> Option<(isize, isize)> {
        let (h1, h2) = self.spacings();
        let a = k1 / h1;
        let b = k2 / h2;
        let (ra, rb) = (a.round(), b.round());
        let tol = lit::<T>(1e-6);
        if (a - ra).abs() > tol || (b - rb).abs() > tol {
            return None;
        }
        let (oa, ob) = (ra.to_isize()?, rb.to_isize()?);
        let (c1, c2) = ((self.n1 / 2) as isize, (self.n2 / 2) as isize);
        if oa < -c1 || oa >= c1 || ob < -c2 || ob >= c2 {
            return None;
        }
        Some((oa, ob))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_counts() {
        assert!(Grid1D::<f64>::new(6, 1.0).is_err());
        assert!(Grid1D::<f64>::new(4, 1.0).is_err());
        assert!(Grid1D::<f64>::new(16, -1.0).is_err());
        assert!(Grid2D::<f64>::new(16, 12, 1.0, 1.0).is_err());
    }

    #[test]
    fn spacing_times_count_is_width() {
        let g = Grid1D::<f64>::new(2048, 16.0).unwrap();
        assert_eq!(g.spacing() * 2048.0, 32.0);
        assert_eq!(g.node(0), -16.0);
        assert_eq!(g.node(1024), 0.0);
    }

    #[test]
    fn spectral_dual_spacing() {
        let g = Grid1D::<f64>::new(256, 8.0).unwrap();
        let d = g.spectral_dual();
        assert!((d.spacing() - std::f64::consts::PI / 16.0).abs() < 1e-15);
        assert!(d.is_dual_of(&g));
        assert!(g.is_dual_of(&d));
    }

    #[test]
    fn dual_lattice_round_trip() {
        let g = Grid2D::<f64>::new(64, 32, 6.0, 3.0).unwrap();
        let k = g.dual();
        assert!(k.dual().matches(&g));
        let (h1, _) = k.spacings();
        assert!((h1 - std::f64::consts::PI / 12.0).abs() < 1e-15);
        assert_eq!(k.lattice_offset(3.0 * h1, 0.0), Some((3, 0)));
        assert_eq!(k.lattice_offset(0.5 * h1, 0.0), None);
    }

    #[test]
    fn locate_cells() {
        let g = Grid1D::<f64>::new(8, 4.0).unwrap();
        assert_eq!(g.locate(-4.0), Some((0, 0.0)));
        assert_eq!(g.locate(0.5), Some((4, 0.5)));
        assert_eq!(g.locate(3.5), None);
        assert_eq!(g.locate(-5.0), None);
    }
}
