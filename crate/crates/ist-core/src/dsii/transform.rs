//! The scattering transform `S q(k) = -(i/pi) int e_k conj(q) m1 dA`, its inverse and
//! its time evolution.
//!
//! The transform is evaluated on a centered block of the dual lattice and set to zero
//! outside it. It is computed as the antilinear Fourier transform plus the correction
//! `-(i/pi) int e_k conj(q) (m1 - 1) dA`.

use std::io::Write;

use num_complex::Complex;
use rayon::prelude::*;

use super::cgo::{CgoOptions, CgoSolver};
use super::potential::{lattice_phase, Potential2D};
use crate::error::{Error, Result};
use crate::rhp::SolverPath;
use crate::scalar::{lit, to_f64, Real};
use crate::spectral::{antilinear_fourier_2d, default_radii, maximal_function_2d, ComplexField2D, Grid2D};

/// Options for [`scattering_transform`] and [`inverse_scattering`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformOptions<T> {
    pub cgo: CgoOptions<T>,
    /// Side of the centered block of lattice points where CGO solves run.
    pub block: usize,
}

impl<T: Real> Default for TransformOptions<T> {
    fn default() -> Self {
        Self { cgo: CgoOptions::default(), block: 48 }
    }
}

/// Convergence record of one CGO solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CgoLogRow<T> {
    pub k1: T,
    pub k2: T,
    pub iterations: usize,
    pub residual: T,
    pub path: SolverPath,
}

/// Samples of the transform on the dual lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct DSIIScatteringData<T> {
    pub s: ComplexField2D<T>,
    pub block: usize,
    /// `| |s|_2 - |q|_2 | / |q|_2`, or the absolute gap when `q = 0`.
    pub isometry_defect: T,
    pub log: Vec<CgoLogRow<T>>,
}

impl<T: Real> DSIIScatteringData<T> {
    #[inline]
    pub fn k_grid(&self) -> &Grid2D<T> {
        self.s.grid()
    }

    /// Every solve took the fixed-point path.
    pub fn all_fixed_point(&self) -> bool {
        self.log.iter().all(|r| r.path == SolverPath::FixedPoint)
    }

    /// CSV with columns `k1, k2, iterations, residual, path`.
    pub fn write_log_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["k1", "k2", "iterations", "residual", "path"])?;
        for r in &self.log {
            out.write_record([
                format!("{:.16e}", to_f64(r.k1)),
                format!("{:.16e}", to_f64(r.k2)),
                r.iterations.to_string(),
                format!("{:.16e}", to_f64(r.residual)),
                r.path.as_str().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Index range of the centered block along an axis of `n` points.
fn block_range(n: usize, block: usize) -> Result<std::ops::Range<usize>> {
    if block == 0 || block > n || block % 2 != 0 {
        return Err(Error::InvalidParameter(format!("block {block} must be even and at most {n}")));
    }
    Ok(n / 2 - block / 2..n / 2 + block / 2)
}

/// Transform of a field on any grid, landing on its dual lattice.
pub fn transform_field<T: Real>(f: &ComplexField2D<T>, opts: &TransformOptions<T>) -> Result<DSIIScatteringData<T>> {
    let grid = *f.grid();
    let (n1, n2) = grid.shape();
    let (b1, b2) = (block_range(n1, opts.block)?, block_range(n2, opts.block)?);
    let q = Potential2D::new(f.clone());
    let target = grid.dual();
    let linear = antilinear_fourier_2d(f);
    let solver = CgoSolver::new(&q, opts.cgo);
    let area = grid.cell_area();
    let weight = Complex::new(T::zero(), -area / T::PI());
    let nodes: Vec<(usize, usize)> = b1.flat_map(|m1| b2.clone().map(move |m2| (m1, m2))).collect();
    let rows: Vec<(usize, Complex<T>, CgoLogRow<T>)> = nodes
        .par_iter()
        .map(|&(m1, m2)| {
            let (k1, k2) = target.node(m1, m2);
            let k = Complex::new(k1, k2);
            let idx = target.index(m1, m2);
            let state = solver.solve(k)?;
            let e = lattice_phase(&grid, k)?;
            let one = Complex::new(T::one(), T::zero());
            let corr = state
                .m1()
                .iter()
                .zip(q.samples())
                .zip(&e)
                .fold(Complex::new(T::zero(), T::zero()), |acc, ((m, q), e)| acc + e * q.conj() * (m - one));
            let row = CgoLogRow {
                k1,
                k2,
                iterations: state.total_iterations(),
                residual: state.residual(),
                path: state.path(),
            };
            Ok((idx, linear.samples()[idx] + corr * weight, row))
        })
        .collect::<Result<_>>()?;
    let mut s = vec![Complex::new(T::zero(), T::zero()); grid.len()];
    let mut log = Vec::with_capacity(rows.len());
    for (idx, v, row) in rows {
        s[idx] = v;
        log.push(row);
    }
    let s = ComplexField2D::new(target, s)?;
    let (ns, nq) = (s.l2_norm(), q.l2_norm());
    let gap = (ns - nq).abs();
    let isometry_defect = if nq > T::zero() { gap / nq } else { gap };
    Ok(DSIIScatteringData { s, block: opts.block, isometry_defect, log })
}

/// `S q` on the centered block of the dual lattice.
pub fn scattering_transform<T: Real>(q: &Potential2D<T>, opts: &TransformOptions<T>) -> Result<DSIIScatteringData<T>> {
    transform_field(q.field(), opts)
}

/// `S s` on the original lattice: the transform is its own inverse.
pub fn inverse_scattering<T: Real>(s: &DSIIScatteringData<T>, opts: &TransformOptions<T>) -> Result<Potential2D<T>> {
    Ok(Potential2D::new(transform_field(&s.s, opts)?.s))
}

/// `s(k, t) = e^{2 i (k^2 + kbar^2) t} s(k) = e^{4 i (k1^2 - k2^2) t} s(k)`.
pub fn evolve_s<T: Real>(s0: &DSIIScatteringData<T>, t: T) -> DSIIScatteringData<T> {
    let grid = *s0.k_grid();
    let (n1, n2) = grid.shape();
    let four_t = lit::<T>(4.0) * t;
    let mut out = Vec::with_capacity(grid.len());
    for m1 in 0..n1 {
        for m2 in 0..n2 {
            let (k1, k2) = grid.node(m1, m2);
            out.push(s0.s.samples()[grid.index(m1, m2)] * Complex::from_polar(T::one(), four_t * (k1 * k1 - k2 * k2)));
        }
    }
    DSIIScatteringData {
        s: ComplexField2D::new(grid, out).expect("unimodular rescaling"),
        block: s0.block,
        isometry_defect: s0.isometry_defect,
        log: s0.log.clone(),
    }
}

/// Largest ratio `|S q(k)| / M qhat(k)` over the sampled block, with `qhat = (1/pi) int e_k q dA`
/// and `M` the discrete maximal function; points where `M qhat` is negligible are skipped.
pub fn maximal_ratio<T: Real>(q: &Potential2D<T>, data: &DSIIScatteringData<T>) -> Result<T> {
    let grid = *data.k_grid();
    let conj_q = ComplexField2D::new(*q.grid(), q.samples().iter().map(|z| z.conj()).collect())?;
    // F_a(conj q) = -(i/pi) int e_k q = -i qhat.
    let i = Complex::new(T::zero(), T::one());
    let qhat = ComplexField2D::new(grid, antilinear_fourier_2d(&conj_q).samples().iter().map(|z| z * i).collect())?;
    let (h1, h2) = grid.spacings();
    let (l1, l2) = grid.half_widths();
    // The half-spacing disc is the point itself, so M qhat >= |qhat|.
    let mut radii = vec![h1.min(h2) * lit(0.5)];
    radii.extend(default_radii(h1.max(h2), l1.min(l2)));
    let m = maximal_function_2d(&qhat, &radii)?;
    let floor = m.iter().fold(T::zero(), |a, &b| a.max(b)) * lit(1e-8);
    let (n1, n2) = grid.shape();
    let (b1, b2) = (block_range(n1, data.block)?, block_range(n2, data.block)?);
    let mut worst = T::zero();
    for m1 in b1 {
        for m2 in b2.clone() {
            let idx = grid.index(m1, m2);
            if m[idx] > floor {
                worst = worst.max(data.s.samples()[idx].norm() / m[idx]);
            }
        }
    }
    Ok(worst)
}
