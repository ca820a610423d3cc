//! Beals-Coifman integral equation at one spatial point.
//!
//! With `w+ = e^{2 i lambda x} r` and `w- = -e^{-2 i lambda x} conj(r)` the first row of
//! `mu` satisfies `mu11 = 1 + C-(mu12 w+)`, `mu12 = C+(mu11 w-)`. Eliminating `mu12`
//! leaves a scalar equation for `mu11` whose operator has norm at most `sup |r|^2`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::krylov::{gmres, GmresOptions};
use crate::scalar::{lit, to_f64, Real};
use crate::spectral::{field, CauchyPair, CauchySign, Grid1D, ZeroModePolicy};
use crate::zs::ReflectionCoefficient;

/// Which solver produced a [`BCSolution`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverPath {
    FixedPoint,
    Krylov,
}

impl SolverPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverPath::FixedPoint => "fixed",
            SolverPath::Krylov => "krylov",
        }
    }
}

/// Solver selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PathChoice {
    /// Fixed point while `sup |r|` is at most the threshold, Krylov above it.
    #[default]
    Auto,
    FixedPoint,
    Krylov,
}

/// Options for [`bc_solve`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BcOptions<T> {
    pub tol: T,
    pub max_iter: usize,
    pub krylov_threshold: T,
    pub restart: usize,
    pub path: PathChoice,
    pub zero_mode: ZeroModePolicy,
    /// Remove the periodic images of the `1/s` and `1/s^2` tails of the Cauchy transform,
    /// which otherwise leave an error quadratic in the inverse grid extent.
    pub tail_correction: bool,
}

impl<T: Real> Default for BcOptions<T> {
    fn default() -> Self {
        Self {
            tol: lit(1e-10),
            max_iter: 200,
            krylov_threshold: lit(0.8),
            restart: 40,
            path: PathChoice::Auto,
            zero_mode: ZeroModePolicy::Split,
            tail_correction: true,
        }
    }
}

/// First column of `mu` at one `x`; the second follows from `mu12 = conj(mu21)`, `mu22 = conj(mu11)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BCSolution<T> {
    pub lambda_grid: Grid1D<T>,
    pub x: T,
    pub mu11: Vec<Complex<T>>,
    pub mu21: Vec<Complex<T>>,
    /// Weighted L2 norm of `F(mu11) - mu11` at exit.
    pub residual: T,
    pub iterations: usize,
    /// Residual after each iteration.
    pub history: Vec<T>,
    pub path: SolverPath,
}

impl<T: Real> BCSolution<T> {
    /// Geometric-mean residual reduction per iteration over the logged history.
    pub fn contraction_ratio(&self) -> Option<T> {
        let h: Vec<T> = self.history.iter().copied().filter(|v| *v > T::zero()).collect();
        if h.len() < 2 {
            return None;
        }
        let steps = T::from_usize(h.len() - 1)?;
        Some((h[h.len() - 1] / h[0]).powf(T::one() / steps))
    }

    /// `mu12 = conj(mu21)`.
    pub fn mu12(&self) -> Vec<Complex<T>> {
        self.mu21.iter().map(|z| z.conj()).collect()
    }
}

/// Plans shared by every `x` for one reflection coefficient.
#[derive(Clone)]
pub struct BcSolver<T> {
    cauchy: CauchyPair<T>,
    r: Vec<Complex<T>>,
    lambda: Vec<T>,
    sup: T,
    opts: BcOptions<T>,
    tails: TailBasis<T>,
}

/// Image sums `sum_{k != 0} (s + 2 L k)^{-p}`, p = 1, 2, over the grid period `2 L`.
#[derive(Clone)]
struct TailBasis<T> {
    s1: Vec<T>,
    s2: Vec<T>,
}

impl<T: Real> TailBasis<T> {
    fn new(grid: &Grid1D<T>) -> Self {
        let c = T::PI() / (grid.half_width() + grid.half_width());
        let (s1, s2) = grid
            .nodes()
            .iter()
            .map(|&l| {
                let th = c * l;
                if th.abs() < lit(1e-3) {
                    let t2 = th * th;
                    (-c * th * (T::one() / lit(3.0) + t2 / lit(45.0)), c * c * (T::one() / lit(3.0) + t2 / lit(15.0)))
                } else {
                    (c / th.tan() - T::one() / l, c * c / (th.sin() * th.sin()) - T::one() / (l * l))
                }
            })
            .unzip();
        Self { s1, s2 }
    }
}

impl<T: Real> BcSolver<T> {
    pub fn new(r: &ReflectionCoefficient<T>, opts: BcOptions<T>) -> Result<Self> {
        if !(r.sup_norm() < T::one()) {
            return Err(Error::NotDefocusing { sup: to_f64(r.sup_norm()) });
        }
        let lambda = r.grid().nodes();
        let tails = TailBasis::new(r.grid());
        Ok(Self {
            cauchy: CauchyPair::new(*r.grid(), opts.zero_mode),
            r: r.samples().to_vec(),
            lambda,
            sup: r.sup_norm(),
            opts,
            tails,
        })
    }

    #[inline]
    pub fn lambda_grid(&self) -> &Grid1D<T> {
        self.cauchy.grid()
    }

    #[inline]
    pub fn options(&self) -> &BcOptions<T> {
        &self.opts
    }

    /// `(w+, w-)` at `x`.
    pub fn weights(&self, x: T) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
        let two = lit::<T>(2.0);
        self.lambda
            .iter()
            .zip(&self.r)
            .map(|(&l, &r)| {
                let e = Complex::from_polar(T::one(), two * l * x);
                (e * r, -(e.conj() * r.conj()))
            })
            .unzip()
    }

    /// Cauchy projector on the line, approximated on the periodic grid.
    ///
    /// For data concentrated well inside the grid the periodic projector adds the images
    /// `-(1/2 pi i) (m0 S1 + m1 S2)` of the transform's far field, with `m_k` the moments.
    pub fn project(&self, sign: CauchySign, buf: &mut [Complex<T>]) {
        if !self.opts.tail_correction {
            self.cauchy.apply_in_place(sign, buf);
            return;
        }
        let zero = Complex::new(T::zero(), T::zero());
        let h = self.lambda_grid().spacing();
        let m0 = buf.iter().fold(zero, |a, z| a + z) * h;
        let m1 = buf.iter().zip(&self.lambda).fold(zero, |a, (z, &l)| a + z * l) * h;
        self.cauchy.apply_in_place(sign, buf);
        let k = Complex::new(T::zero(), T::one() / (T::PI() + T::PI()));
        buf.iter_mut().enumerate().for_each(|(j, z)| *z = *z - k * (m0 * self.tails.s1[j] + m1 * self.tails.s2[j]));
    }

    /// `mu12 = C+(mu11 w-)`.
    fn second(&self, mu11: &[Complex<T>], wm: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut v: Vec<_> = mu11.iter().zip(wm).map(|(m, w)| m * w).collect();
        self.project(CauchySign::Plus, &mut v);
        v
    }

    /// `C-(C+(u w-) w+)`, the linear part of the scalar equation.
    fn linear(&self, u: &[Complex<T>], wp: &[Complex<T>], wm: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut v = self.second(u, wm);
        v.iter_mut().zip(wp).for_each(|(a, w)| *a = *a * w);
        self.project(CauchySign::Minus, &mut v);
        v
    }

    fn residual_norm(&self, mu: &[Complex<T>], wp: &[Complex<T>], wm: &[Complex<T>]) -> T {
        let one = Complex::new(T::one(), T::zero());
        let lm = self.linear(mu, wp, wm);
        let d: Vec<_> = lm.iter().zip(mu).map(|(l, m)| one + l - m).collect();
        field::weighted_l2(&d, self.lambda_grid().spacing())
    }

    pub fn solve(&self, x: T) -> Result<BCSolution<T>> {
        let (wp, wm) = self.weights(x);
        let n = self.r.len();
        let one = Complex::new(T::one(), T::zero());
        let h = self.lambda_grid().spacing();
        let path = match self.opts.path {
            PathChoice::FixedPoint => SolverPath::FixedPoint,
            PathChoice::Krylov => SolverPath::Krylov,
            PathChoice::Auto if self.sup <= self.opts.krylov_threshold => SolverPath::FixedPoint,
            PathChoice::Auto => SolverPath::Krylov,
        };
        let mut mu = vec![one; n];
        let mut history = Vec::new();
        let mut iterations = 0;
        match path {
            SolverPath::FixedPoint => loop {
                let next: Vec<_> = self.linear(&mu, &wp, &wm).iter().map(|l| one + l).collect();
                let res = field::weighted_l2_diff(&next, &mu, h);
                history.push(res);
                if res <= self.opts.tol || iterations >= self.opts.max_iter {
                    break;
                }
                mu = next;
                iterations += 1;
            },
            SolverPath::Krylov => {
                let b = self.linear(&mu, &wp, &wm);
                let mut u = vec![Complex::new(T::zero(), T::zero()); n];
                let gopts =
                    GmresOptions { tol: self.opts.tol, max_iter: self.opts.max_iter, restart: self.opts.restart };
                let out = gmres(
                    |v| self.linear(v, &wp, &wm).iter().zip(v).map(|(l, x)| x - l).collect(),
                    &b,
                    &mut u,
                    h,
                    &gopts,
                );
                iterations = out.iterations;
                history = out.history;
                mu.iter_mut().zip(&u).for_each(|(m, d)| *m = *m + d);
            }
        }
        let residual = self.residual_norm(&mu, &wp, &wm);
        if !(residual <= self.opts.tol * lit(10.0)) {
            return Err(Error::BcNonConvergence { x: to_f64(x), residual: to_f64(residual), iterations });
        }
        let mu21 = self.second(&mu, &wm).iter().map(|z| z.conj()).collect();
        Ok(BCSolution { lambda_grid: *self.lambda_grid(), x, mu11: mu, mu21, residual, iterations, history, path })
    }
}

/// Solves the Beals-Coifman equation at `x`.
pub fn bc_solve<T: Real>(r: &ReflectionCoefficient<T>, x: T, opts: &BcOptions<T>) -> Result<BCSolution<T>> {
    BcSolver::new(r, *opts)?.solve(x)
}
