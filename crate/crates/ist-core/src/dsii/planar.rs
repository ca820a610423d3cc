//! Solid Cauchy transform on the plane, evaluated on a periodic grid.
//!
//! The periodic inverse of d/dzbar differs from convolution with `1/(pi z)` by
//! `-(m0 zbar - n1) / A` to leading order, where `A` is the cell area of the torus,
//! `m0 = int f` and `n1 = int zbar f`. Both moments are carried by a Gaussian pair
//! with closed-form transforms, leaving an `O(L^-4)` periodization error.

use num_complex::Complex;

use crate::scalar::{lit, Real};
use crate::spectral::{Grid2D, Spectral2D};

/// `dbar^{-1}` on the plane for data concentrated well inside the grid.
#[derive(Clone)]
pub struct PlanarCauchy<T> {
    spectral: Spectral2D<T>,
    nodes: Vec<Complex<T>>,
    /// Unit-mass Gaussian `e^{-|z|^2/s^2} / (pi s^2)`.
    bump: Vec<T>,
    /// Its solid Cauchy transform `(1 - e^{-|z|^2/s^2}) / (pi z)`.
    bump_cauchy: Vec<Complex<T>>,
    /// `d/dzbar` of the bump, whose transform is the bump itself.
    bump_dbar: Vec<Complex<T>>,
    corrected: bool,
}

impl<T: Real> PlanarCauchy<T> {
    pub fn new(grid: Grid2D<T>) -> Self {
        Self::with_correction(grid, true)
    }

    /// Plain periodic multiplier when `corrected` is false.
    pub fn with_correction(grid: Grid2D<T>, corrected: bool) -> Self {
        let (n1, n2) = grid.shape();
        let (l1, l2) = grid.half_widths();
        let (h1, h2) = grid.spacings();
        // Geometric mean of spacing and extent: resolved and negligible at the boundary.
        let s2 = (l1.min(l2) * h1.max(h2)).max(h1.max(h2) * h1.max(h2) * lit(4.0));
        let mut nodes = Vec::with_capacity(n1 * n2);
        for j1 in 0..n1 {
            for j2 in 0..n2 {
                let (x1, x2) = grid.node(j1, j2);
                nodes.push(Complex::new(x1, x2));
            }
        }
        let norm = T::one() / (T::PI() * s2);
        let bump: Vec<T> = nodes.iter().map(|z| (-z.norm_sqr() / s2).exp() * norm).collect();
        let bump_cauchy = nodes
            .iter()
            .map(|z| {
                let u = z.norm_sqr() / s2;
                if u < lit(1e-8) {
                    // (1 - e^{-u}) / z = zbar (1 - u/2) / s^2 for small u.
                    z.conj() * (norm * (T::one() - u * lit(0.5)))
                } else {
                    z.inv() * ((T::one() - (-u).exp()) / T::PI())
                }
            })
            .collect();
        let bump_dbar = nodes.iter().zip(&bump).map(|(z, &b)| z * (-b / s2)).collect();
        Self { spectral: Spectral2D::new(grid), nodes, bump, bump_cauchy, bump_dbar, corrected }
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D<T> {
        self.spectral.grid()
    }

    #[inline]
    pub fn spectral(&self) -> &Spectral2D<T> {
        &self.spectral
    }

    /// `(1/pi) int f(w) / (z - w) dA(w)` at every node, in place.
    pub fn apply_in_place(&self, buf: &mut [Complex<T>]) {
        let symbol = self.spectral.dbar_inverse_symbol();
        if !self.corrected {
            self.spectral.apply_in_place(symbol, buf);
            return;
        }
        let area = self.grid().cell_area();
        let zero = Complex::new(T::zero(), T::zero());
        let (m0, n1) = buf.iter().zip(&self.nodes).fold((zero, zero), |(a, b), (f, z)| (a + f, b + f * z.conj()));
        let (m0, n1) = (m0 * area, n1 * area);
        // d/dzbar of the bump has zero mass and zbar-moment -1.
        buf.iter_mut().zip(self.bump.iter().zip(&self.bump_dbar)).for_each(|(f, (&b, db))| *f = *f - m0 * b + n1 * db);
        self.spectral.apply_in_place(symbol, buf);
        buf.iter_mut().zip(self.bump_cauchy.iter().zip(&self.bump)).for_each(|(f, (c, &b))| *f = *f + m0 * c - n1 * b);
    }

    pub fn apply(&self, f: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut buf = f.to_vec();
        self.apply_in_place(&mut buf);
        buf
    }
}
