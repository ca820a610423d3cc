use std::io::Write;

use num_complex::Complex;
use rayon::prelude::*;

use super::bc::{BCSolution, BcOptions, BcSolver, SolverPath};
use crate::error::Result;
use crate::scalar::{lit, to_f64, Real};
use crate::spectral::{ComplexField1D, Grid1D};
use crate::zs::{Potential1D, ReflectionCoefficient};

/// Reconstructed potential with the per-node solver record.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction<T> {
    pub potential: Potential1D<T>,
    pub residuals: Vec<T>,
    pub iterations: Vec<usize>,
    pub paths: Vec<SolverPath>,
    /// Contraction ratio per node where the fixed-point path ran.
    pub ratios: Vec<Option<T>>,
}

impl<T: Real> Reconstruction<T> {
    /// CSV with columns `x, re_q, im_q, residual, iterations`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["x", "re_q", "im_q", "residual", "iterations"])?;
        let grid = self.potential.grid();
        for (j, q) in self.potential.samples().iter().enumerate() {
            let x = grid.node(j);
            let mut row = [x, q.re, q.im, self.residuals[j]].map(|v| format!("{:.16e}", to_f64(v))).to_vec();
            row.push(self.iterations[j].to_string());
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// `q(x) = (1/pi) sum_s h conj(r(s)) e^{-2 i x s} mu11(x, s)`.
pub fn recover_value<T: Real>(solver: &BcSolver<T>, r: &ReflectionCoefficient<T>, sol: &BCSolution<T>) -> Complex<T> {
    let grid = solver.lambda_grid();
    let two = lit::<T>(2.0);
    let sum =
        r.samples().iter().zip(&sol.mu11).enumerate().fold(Complex::new(T::zero(), T::zero()), |acc, (m, (rv, mu))| {
            acc + rv.conj() * Complex::from_polar(T::one(), -two * sol.x * grid.node(m)) * mu
        });
    sum * (grid.spacing() / T::PI())
}

/// Inverse scattering map: one Beals-Coifman solve per node of `x_grid`.
pub fn reconstruct_q<T: Real>(
    r: &ReflectionCoefficient<T>,
    x_grid: &Grid1D<T>,
    opts: &BcOptions<T>,
) -> Result<Reconstruction<T>> {
    let solver = BcSolver::new(r, *opts)?;
    let rows: Vec<(Complex<T>, T, usize, SolverPath, Option<T>)> = (0..x_grid.len())
        .into_par_iter()
        .map(|j| {
            let sol = solver.solve(x_grid.node(j))?;
            let q = recover_value(&solver, r, &sol);
            let ratio = match sol.path {
                SolverPath::FixedPoint => sol.contraction_ratio(),
                SolverPath::Krylov => None,
            };
            Ok((q, sol.residual, sol.iterations, sol.path, ratio))
        })
        .collect::<Result<_>>()?;
    let mut samples = Vec::with_capacity(rows.len());
    let mut out = Reconstruction {
        potential: Potential1D::zero(*x_grid),
        residuals: vec![],
        iterations: vec![],
        paths: vec![],
        ratios: vec![],
    };
    for (q, res, it, path, ratio) in rows {
        samples.push(q);
        out.residuals.push(res);
        out.iterations.push(it);
        out.paths.push(path);
        out.ratios.push(ratio);
    }
    out.potential = Potential1D::compact(ComplexField1D::new(*x_grid, samples)?);
    Ok(out)
}

/// Inverse map on the grid whose spectral dual carries `r`.
pub fn inverse_map<T: Real>(r: &ReflectionCoefficient<T>, opts: &BcOptions<T>) -> Result<Reconstruction<T>> {
    reconstruct_q(r, &r.grid().spectral_dual(), opts)
}
