//! Complex geometric optics solutions at one spectral parameter.
//!
//! With `m2 = e_{-k} n`, the pair `m+- = m1 +- conj(n)` decouples into
//! `dbar m+- = +- e_{-k} q conj(m+-)`, `m+- -> 1`. For `w = m+- - 1` this is the
//! antilinear equation `w - T w = dbar^{-1}(+- e_{-k} q)`, `T f = dbar^{-1}(+- e_{-k} q conj f)`.

use num_complex::Complex;

use super::planar::PlanarCauchy;
use super::potential::{lattice_phase, Potential2D};
use crate::error::{Error, Result};
use crate::krylov::{gmres, GmresOptions};
use crate::rhp::{PathChoice, SolverPath};
use crate::scalar::{lit, to_f64, Real};
use crate::spectral::{field, ComplexField2D, Grid2D};

/// Options for [`cgo_solve`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CgoOptions<T> {
    /// Absolute tolerance on the area-weighted L2 residual.
    pub tol: T,
    pub max_iter: usize,
    /// Fixed-point iteration hands over to Krylov once a step contracts less than this.
    pub krylov_threshold: T,
    pub restart: usize,
    pub path: PathChoice,
    /// Moment correction of the periodic solid Cauchy transform.
    pub planar_correction: bool,
}

impl<T: Real> Default for CgoOptions<T> {
    fn default() -> Self {
        Self {
            tol: lit(1e-10),
            max_iter: 300,
            krylov_threshold: lit(0.8),
            restart: 40,
            path: PathChoice::Auto,
            planar_correction: true,
        }
    }
}

/// Both scalar reductions at one `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CGOState<T> {
    pub k: Complex<T>,
    pub m_plus: ComplexField2D<T>,
    pub m_minus: ComplexField2D<T>,
    /// Residuals, iteration counts and paths for the `+` and `-` equations.
    pub residuals: [T; 2],
    pub iterations: [usize; 2],
    pub paths: [SolverPath; 2],
    /// Largest single-step residual ratio seen on the fixed-point path.
    pub ratios: [Option<T>; 2],
}

impl<T: Real> CGOState<T> {
    /// `m1 = (m+ + m-) / 2`.
    pub fn m1(&self) -> Vec<Complex<T>> {
        let half = lit::<T>(0.5);
        self.m_plus.samples().iter().zip(self.m_minus.samples()).map(|(p, m)| (p + m) * half).collect()
    }

    /// `m2 = e_{-k} conj(m+ - m-) / 2`.
    pub fn m2(&self) -> Result<Vec<Complex<T>>> {
        let half = lit::<T>(0.5);
        let e = lattice_phase(self.m_plus.grid(), self.k)?;
        Ok(self
            .m_plus
            .samples()
            .iter()
            .zip(self.m_minus.samples())
            .zip(&e)
            .map(|((p, m), e)| e.conj() * (p - m).conj() * half)
            .collect())
    }

    pub fn residual(&self) -> T {
        self.residuals[0].max(self.residuals[1])
    }

    pub fn total_iterations(&self) -> usize {
        self.iterations[0] + self.iterations[1]
    }

    /// `Krylov` if either equation needed it.
    pub fn path(&self) -> SolverPath {
        if self.paths.contains(&SolverPath::Krylov) {
            SolverPath::Krylov
        } else {
            SolverPath::FixedPoint
        }
    }
}

struct Sweep<T> {
    w: Vec<Complex<T>>,
    residual: T,
    iterations: usize,
    path: SolverPath,
    ratio: Option<T>,
}

/// Plans shared by every `k` for one potential.
#[derive(Clone)]
pub struct CgoSolver<T> {
    cauchy: PlanarCauchy<T>,
    q: Vec<Complex<T>>,
    norm_q: T,
    opts: CgoOptions<T>,
}

impl<T: Real> CgoSolver<T> {
    pub fn new(q: &Potential2D<T>, opts: CgoOptions<T>) -> Self {
        Self {
            cauchy: PlanarCauchy::with_correction(*q.grid(), opts.planar_correction),
            q: q.samples().to_vec(),
            norm_q: q.l2_norm(),
            opts,
        }
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D<T> {
        self.cauchy.grid()
    }

    #[inline]
    pub fn options(&self) -> &CgoOptions<T> {
        &self.opts
    }

    /// `f -> dbar^{-1}(coef conj f)` with `coef = +- e_{-k} q`.
    fn operator(&self, coef: &[Complex<T>], f: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut v: Vec<_> = coef.iter().zip(f).map(|(c, x)| c * x.conj()).collect();
        self.cauchy.apply_in_place(&mut v);
        v
    }

    fn residual_norm(&self, coef: &[Complex<T>], b: &[Complex<T>], w: &[Complex<T>]) -> T {
        let tw = self.operator(coef, w);
        let r: Vec<_> = w.iter().zip(&tw).zip(b).map(|((w, t), b)| w - t - b).collect();
        field::weighted_l2(&r, self.grid().cell_area())
    }

    fn sweep(&self, coef: &[Complex<T>], k: Complex<T>) -> Result<Sweep<T>> {
        let area = self.grid().cell_area();
        let b = self.cauchy.apply(coef);
        let opts = &self.opts;
        let mut w = b.clone();
        let mut iterations = 1;
        let mut path = SolverPath::FixedPoint;
        let mut ratio: Option<T> = None;
        if opts.path != PathChoice::Krylov {
            let mut prev: Option<T> = None;
            loop {
                let next: Vec<_> = self.operator(coef, &w).iter().zip(&b).map(|(t, b)| t + b).collect();
                let step = field::weighted_l2_diff(&next, &w, area);
                w = next;
                iterations += 1;
                if let Some(p) = prev.filter(|p| *p > T::zero()) {
                    let r = step / p;
                    ratio = Some(ratio.map_or(r, |old: T| old.max(r)));
                    if opts.path == PathChoice::Auto && r > opts.krylov_threshold {
                        path = SolverPath::Krylov;
                        break;
                    }
                }
                if step <= opts.tol * lit(0.1) || iterations >= opts.max_iter {
                    break;
                }
                prev = Some(step);
            }
        } else {
            path = SolverPath::Krylov;
        }
        if path == SolverPath::Krylov {
            let gopts = GmresOptions { tol: opts.tol * lit(0.5), max_iter: opts.max_iter, restart: opts.restart };
            let out =
                gmres(|v| self.operator(coef, v).iter().zip(v).map(|(t, x)| x - t).collect(), &b, &mut w, area, &gopts);
            iterations += out.iterations;
        }
        let residual = self.residual_norm(coef, &b, &w);
        if !(residual <= opts.tol) {
            return Err(Error::CgoNonConvergence {
                k1: to_f64(k.re),
                k2: to_f64(k.im),
                norm_q: to_f64(self.norm_q),
                residual: to_f64(residual),
                iterations,
            });
        }
        Ok(Sweep { w, residual, iterations, path, ratio })
    }

    /// CGO state at `k`, which must lie on the dual lattice of the grid.
    pub fn solve(&self, k: Complex<T>) -> Result<CGOState<T>> {
        let e_minus: Vec<_> = lattice_phase(self.grid(), k)?.iter().map(|e| e.conj()).collect();
        let plus: Vec<_> = self.q.iter().zip(&e_minus).map(|(q, e)| q * e).collect();
        let minus: Vec<_> = plus.iter().map(|z| -z).collect();
        let sp = self.sweep(&plus, k)?;
        let sm = self.sweep(&minus, k)?;
        let one = Complex::new(T::one(), T::zero());
        let lift = |w: Vec<Complex<T>>| ComplexField2D::new(*self.grid(), w.iter().map(|z| one + z).collect());
        Ok(CGOState {
            k,
            m_plus: lift(sp.w)?,
            m_minus: lift(sm.w)?,
            residuals: [sp.residual, sm.residual],
            iterations: [sp.iterations, sm.iterations],
            paths: [sp.path, sm.path],
            ratios: [sp.ratio, sm.ratio],
        })
    }
}

/// Solves for the CGO pair of `q` at `k`.
pub fn cgo_solve<T: Real>(q: &Potential2D<T>, k: Complex<T>, opts: &CgoOptions<T>) -> Result<CGOState<T>> {
    CgoSolver::new(q, *opts).solve(k)
}
