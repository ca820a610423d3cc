use std::io::{Read, Write};

use num_complex::Complex;
use rayon::prelude::*;

use super::jost::{JostSweeper, Scheme};
use super::potential::Potential1D;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};
use crate::spectral::Grid1D;

/// Options for the direct map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectOptions<T> {
    pub scheme: Scheme,
    pub tol_unitarity: T,
}

impl<T: Real> Default for DirectOptions<T> {
    fn default() -> Self {
        Self { scheme: Scheme::default(), tol_unitarity: lit(1e-8) }
    }
}

/// Transition coefficients `a(lambda)`, `b(lambda)` on a spectral grid.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionData<T> {
    lambda_grid: Grid1D<T>,
    a: Vec<Complex<T>>,
    b: Vec<Complex<T>>,
}

impl<T: Real> TransitionData<T> {
    /// Validates `||a|^2 - |b|^2 - 1| <= tol` and `|a| >= 1 - tol` at every node.
    pub fn new(lambda_grid: Grid1D<T>, a: Vec<Complex<T>>, b: Vec<Complex<T>>, tol: T) -> Result<Self> {
        for v in [&a, &b] {
            if v.len() != lambda_grid.len() {
                return Err(Error::LengthMismatch { expected: lambda_grid.len(), got: v.len() });
            }
        }
        for (m, (x, y)) in a.iter().zip(&b).enumerate() {
            let dev = (x.norm_sqr() - y.norm_sqr() - T::one()).abs();
            if !(dev <= tol) || !(x.norm() >= T::one() - tol) {
                return Err(Error::Unitarity { lambda: to_f64(lambda_grid.node(m)), deviation: to_f64(dev) });
            }
        }
        Ok(Self { lambda_grid, a, b })
    }

    #[inline]
    pub fn lambda_grid(&self) -> &Grid1D<T> {
        &self.lambda_grid
    }

    #[inline]
    pub fn a(&self) -> &[Complex<T>] {
        &self.a
    }

    #[inline]
    pub fn b(&self) -> &[Complex<T>] {
        &self.b
    }

    /// Largest `||a|^2 - |b|^2 - 1|` over the grid.
    pub fn unitarity_defect(&self) -> T {
        self.a
            .iter()
            .zip(&self.b)
            .fold(T::zero(), |acc, (x, y)| acc.max((x.norm_sqr() - y.norm_sqr() - T::one()).abs()))
    }

    /// CSV with columns `lambda, re_a, im_a, re_b, im_b, re_r, im_r`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["lambda", "re_a", "im_a", "re_b", "im_b", "re_r", "im_r"])?;
        for (m, (a, b)) in self.a.iter().zip(&self.b).enumerate() {
            let r = -b / a.conj();
            let row =
                [self.lambda_grid.node(m), a.re, a.im, b.re, b.im, r.re, r.im].map(|v| format!("{:.16e}", to_f64(v)));
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads the CSV written by [`TransitionData::write_csv`] back onto `lambda_grid`.
    pub fn read_csv<R: Read>(r: R, lambda_grid: Grid1D<T>, tol: T) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for rec in rdr.records() {
            let rec = rec?;
            let v: Vec<f64> = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Format(e.to_string())))
                .collect::<Result<_>>()?;
            if v.len() != 7 {
                return Err(Error::Format("expected 7 columns".into()));
            }
            a.push(Complex::new(lit(v[1]), lit(v[2])));
            b.push(Complex::new(lit(v[3]), lit(v[4])));
        }
        Self::new(lambda_grid, a, b, tol)
    }
}

/// `a = N11(-L)`, `b = N21(-L)` at every node of `lambda_grid`.
pub fn transition_data<T: Real>(
    q: &Potential1D<T>,
    lambda_grid: &Grid1D<T>,
    opts: &DirectOptions<T>,
) -> Result<TransitionData<T>> {
    let sweeper = JostSweeper::new(q, opts.scheme);
    let extent = lambda_grid.node(0).abs().max(lambda_grid.node(lambda_grid.len() - 1).abs());
    sweeper.audit(Complex::new(extent, T::zero()))?;
    let cols: Vec<[Complex<T>; 2]> = (0..lambda_grid.len())
        .into_par_iter()
        .map(|m| sweeper.first_column(Complex::new(lambda_grid.node(m), T::zero())))
        .collect::<Result<_>>()?;
    let (a, b) = cols.into_iter().map(|v| (v[0], v[1])).unzip();
    TransitionData::new(*lambda_grid, a, b, opts.tol_unitarity)
}
