//! Jost solutions of the Zakharov-Shabat system.
//!
//! The sweep integrates `psi' = (-i lambda sigma3 + Q(x)) psi` cell by cell with exact
//! 2x2 exponentials and converts back via `N = e^{i lambda x sigma3} psi`, so the
//! oscillation `e^{2 i lambda x}` is never discretized. Each node `x_j` owns the cell
//! `[x_j - h/2, x_j + h/2]`.

use num_complex::Complex;

use super::potential::Potential1D;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::spectral::{FourierMultiplierSpec, Grid1D, Spectral1D};

/// Cell integrator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Exponential midpoint rule, order 2; exact for cellwise-constant potentials.
    Midpoint,
    /// Two-exponential commutator-free Magnus scheme, order 4.
    #[default]
    CommutatorFree4,
}

/// First column of `N(x, lambda)` at the cell boundaries, in increasing `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct JostTrajectory<T> {
    pub x: Vec<T>,
    pub n11: Vec<Complex<T>>,
    pub n21: Vec<Complex<T>>,
}

impl<T: Real> JostTrajectory<T> {
    /// `det N = |N11|^2 - |N21|^2`, valid for real `lambda` where `N12 = conj(N21)`, `N22 = conj(N11)`.
    pub fn det(&self, i: usize) -> T {
        self.n11[i].norm_sqr() - self.n21[i].norm_sqr()
    }
}

/// `exp([[a, b], [c, -a]]) v`.
#[inline]
fn expm_apply<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
    let d2 = a * a + b * c;
    let (co, si) = if d2.norm() < lit(1e-6) {
        // cosh and sinh(d)/d as series in d^2.
        let six = lit::<T>(6.0);
        let co = Complex::new(T::one(), T::zero()) + d2 * (d2 / lit::<T>(24.0) + lit::<T>(0.5));
        let si = Complex::new(T::one(), T::zero()) + d2 * (d2 / lit::<T>(120.0) + T::one() / six);
        (co, si)
    } else {
        let d = d2.sqrt();
        (d.cosh(), d.sinh() / d)
    };
    [co * v[0] + si * (a * v[0] + b * v[1]), co * v[1] + si * (c * v[0] - a * v[1])]
}

/// Precomputed potential samples for repeated sweeps at many `lambda`.
#[derive(Clone, Debug)]
pub struct JostSweeper<T> {
    grid: Grid1D<T>,
    scheme: Scheme,
    mid: Vec<Complex<T>>,
    upper: Vec<Complex<T>>,
    lower: Vec<Complex<T>>,
}

#[derive(Clone, Copy)]
enum Direction {
    Down,
    Up,
}

impl<T: Real> JostSweeper<T> {
    pub fn new(q: &Potential1D<T>, scheme: Scheme) -> Self {
        let grid = *q.grid();
        let mid = q.samples().to_vec();
        let (upper, lower) = match scheme {
            Scheme::Midpoint => (Vec::new(), Vec::new()),
            Scheme::CommutatorFree4 => {
                // Gauss points x_j +- sqrt(3) h / 6, by band-limited interpolation.
                let ops = Spectral1D::new(grid);
                let d = grid.spacing() * lit::<T>(3f64.sqrt() / 6.0);
                let one = Complex::new(T::one(), T::zero());
                let shift = |s: T| {
                    let spec =
                        FourierMultiplierSpec::from_fn_1d(&grid, |xi| Complex::from_polar(T::one(), xi * s), one);
                    let mut buf = mid.clone();
                    ops.apply_in_place(&spec, &mut buf);
                    buf
                };
                (shift(d), shift(-d))
            }
        };
        Self { grid, scheme, mid, upper, lower }
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    #[inline]
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Rejects `lambda` whose phase increment per cell exceeds `pi/2`.
    pub fn audit(&self, lambda: Complex<T>) -> Result<()> {
        let phase = lambda.norm() * self.grid.spacing();
        let limit = T::FRAC_PI_2() * lit::<T>(1.0 + 1e-9);
        if !(phase <= limit) {
            return Err(Error::StepAudit { phase: to_f64(phase), limit: to_f64(limit) });
        }
        Ok(())
    }

    fn sweep(
        &self,
        lambda: Complex<T>,
        dir: Direction,
        mut visit: impl FnMut(usize, T, [Complex<T>; 2]),
    ) -> Result<()> {
        self.audit(lambda)?;
        let n = self.grid.len();
        let h = self.grid.spacing();
        let half = lit::<T>(0.5);
        let i = Complex::new(T::zero(), T::one());
        let boundary = |k: usize| self.grid.node(0) - h * half + from_usize::<T>(k) * h;
        // The free factor e^{-i lambda x sigma3} is applied exactly on entry and exit.
        let to_n = |x: T, psi: [Complex<T>; 2]| [(i * lambda * x).exp() * psi[0], (-i * lambda * x).exp() * psi[1]];
        let (start, sgn) = match dir {
            Direction::Down => (n, -T::one()),
            Direction::Up => (0, T::one()),
        };
        let x0 = boundary(start);
        let mut psi = [(-i * lambda * x0).exp(), Complex::new(T::zero(), T::zero())];
        visit(start, x0, [Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero())]);
        // Exponent of sgn * w * h * A with A = [[-i lambda, p], [conj p, i lambda]].
        let step = |psi: [Complex<T>; 2], w: T, p: Complex<T>| {
            let s = sgn * h;
            expm_apply(-i * lambda * (s * w), p * s, p.conj() * s, psi)
        };
        let sqrt3_6 = lit::<T>(3f64.sqrt() / 6.0);
        let (alpha1, alpha2) = (lit::<T>(0.25) - sqrt3_6, lit::<T>(0.25) + sqrt3_6);
        for m in 0..n {
            let j = match dir {
                Direction::Down => n - 1 - m,
                Direction::Up => m,
            };
            psi = match self.scheme {
                Scheme::Midpoint => step(psi, T::one(), self.mid[j]),
                Scheme::CommutatorFree4 => {
                    // Gauss values in the order the sweep meets them.
                    let (first, second) = match dir {
                        Direction::Down => (self.upper[j], self.lower[j]),
                        Direction::Up => (self.lower[j], self.upper[j]),
                    };
                    let psi = step(psi, half, first * alpha2 + second * alpha1);
                    step(psi, half, first * alpha1 + second * alpha2)
                }
            };
            let k = match dir {
                Direction::Down => j,
                Direction::Up => j + 1,
            };
            let x = boundary(k);
            visit(k, x, to_n(x, psi));
        }
        Ok(())
    }

    /// `(N11, N21)` at the left end of the sweep from `N = I` on the right.
    pub fn first_column(&self, lambda: Complex<T>) -> Result<[Complex<T>; 2]> {
        let mut out = [Complex::new(T::zero(), T::zero()); 2];
        self.sweep(lambda, Direction::Down, |_, _, v| out = v)?;
        Ok(out)
    }

    /// Right-normalized trajectory, `N(+L) = I`.
    pub fn trajectory(&self, lambda: Complex<T>) -> Result<JostTrajectory<T>> {
        self.collect(lambda, Direction::Down)
    }

    /// Mirrored sweep, normalized by `N(-L) = I`.
    pub fn trajectory_left(&self, lambda: Complex<T>) -> Result<JostTrajectory<T>> {
        self.collect(lambda, Direction::Up)
    }

    fn collect(&self, lambda: Complex<T>, dir: Direction) -> Result<JostTrajectory<T>> {
        let n = self.grid.len() + 1;
        let zero = Complex::new(T::zero(), T::zero());
        let mut t = JostTrajectory { x: vec![T::zero(); n], n11: vec![zero; n], n21: vec![zero; n] };
        self.sweep(lambda, dir, |k, x, v| {
            t.x[k] = x;
            t.n11[k] = v[0];
            t.n21[k] = v[1];
        })?;
        Ok(t)
    }
}

/// Right-normalized Jost trajectory at one spectral parameter.
pub fn jost_sweep<T: Real>(q: &Potential1D<T>, lambda: Complex<T>, scheme: Scheme) -> Result<JostTrajectory<T>> {
    JostSweeper::new(q, scheme).trajectory(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    /// Dense 2x2 exponential by scaling and squaring of a Taylor series.
    fn expm_dense(m: [[Complex<f64>; 2]; 2]) -> [[Complex<f64>; 2]; 2] {
        let mul = |a: [[Complex<f64>; 2]; 2], b: [[Complex<f64>; 2]; 2]| {
            let mut o = [[c(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    o[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                }
            }
            o
        };
        let norm = m.iter().flatten().map(|z| z.norm()).sum::<f64>();
        let s = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
        let scale = 0.5f64.powi(s);
        let a = [[m[0][0] * scale, m[0][1] * scale], [m[1][0] * scale, m[1][1] * scale]];
        let mut term = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let mut sum = term;
        for k in 1..30 {
            term = mul(term, a);
            term = [[term[0][0] / k as f64, term[0][1] / k as f64], [term[1][0] / k as f64, term[1][1] / k as f64]];
            for i in 0..2 {
                for j in 0..2 {
                    sum[i][j] += term[i][j];
                }
            }
        }
        for _ in 0..s {
            sum = mul(sum, sum);
        }
        sum
    }

    #[test]
    fn zero_potential_gives_identity() {
        let grid = Grid1D::<f64>::new(64, 4.0).unwrap();
        let t = jost_sweep(&Potential1D::zero(grid), c(1.3, 0.0), Scheme::default()).unwrap();
        for k in 0..=64 {
            assert!((t.n11[k] - c(1.0, 0.0)).norm() < 1e-14);
            assert!(t.n21[k].norm() < 1e-14);
        }
    }

    #[test]
    fn expm_matches_dense_oracle() {
        for &(a, b, cc) in &[
            (c(0.0, 0.3), c(0.2, -0.1), c(0.2, 0.1)),
            (c(0.0, 1e-5), c(1e-4, 0.0), c(1e-4, 0.0)),
            (c(0.4, -0.2), c(-0.7, 0.5), c(0.3, 0.9)),
        ] {
            let v = [c(0.3, -1.0), c(0.5, 0.25)];
            let got = expm_apply(a, b, cc, v);
            let e = expm_dense([[a, b], [cc, -a]]);
            let want = [e[0][0] * v[0] + e[0][1] * v[1], e[1][0] * v[0] + e[1][1] * v[1]];
            let err = (got[0] - want[0]).norm().max((got[1] - want[1]).norm());
            assert!(err < 1e-13, "expm mismatch {err}");
        }
    }

    #[test]
    fn box_potential_matches_closed_form() {
        // Constant q on [xa, xb]: N(xa) = e^{i lambda xa sigma3} exp(-(xb - xa) A) e^{-i lambda xb sigma3}.
        let grid = Grid1D::<f64>::new(256, 8.0).unwrap();
        let h = grid.spacing();
        let amp = c(0.8, 0.3);
        let (first, last) = (128usize, 160usize);
        let q = Potential1D::box_cells(grid, amp, first, last).unwrap();
        let sweeper = JostSweeper::new(&q, Scheme::Midpoint);
        let (xa, xb) = (grid.node(first) - h / 2.0, grid.node(last) + h / 2.0);
        for &lam in &[0.0, 0.37, -1.5, 4.0] {
            let got = sweeper.first_column(c(lam, 0.0)).unwrap();
            let len = xb - xa;
            let a = [[c(0.0, lam * len), -amp * len], [-amp.conj() * len, c(0.0, -lam * len)]];
            let e = expm_dense(a);
            let right = c(0.0, -lam * xb).exp();
            let want = [c(0.0, lam * xa).exp() * e[0][0] * right, c(0.0, -lam * xa).exp() * e[1][0] * right];
            assert!((got[0] - want[0]).norm() < 1e-12, "lambda {lam}");
            assert!((got[1] - want[1]).norm() < 1e-12, "lambda {lam}");
        }
    }

    #[test]
    fn determinant_is_one_along_sweep() {
        let grid = Grid1D::<f64>::new(512, 8.0).unwrap();
        let q = Potential1D::gaussian(grid, 1.2, 1.0).unwrap();
        for scheme in [Scheme::Midpoint, Scheme::CommutatorFree4] {
            let t = jost_sweep(&q, c(0.7, 0.0), scheme).unwrap();
            for k in 0..t.x.len() {
                assert!((t.det(k) - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn left_sweep_inverts_transition_matrix() {
        let grid = Grid1D::<f64>::new(512, 8.0).unwrap();
        let q = Potential1D::gaussian(grid, 0.9, 1.0).unwrap();
        let s = JostSweeper::new(&q, Scheme::CommutatorFree4);
        let lam = c(0.45, 0.0);
        let [a, b] = s.first_column(lam).unwrap();
        let left = s.trajectory_left(lam).unwrap();
        // N_left(+L) = T^{-1}, whose first column is (conj a, -b).
        assert!((left.n11[512] - a.conj()).norm() < 1e-10);
        assert!((left.n21[512] + b).norm() < 1e-10);
    }

    #[test]
    fn audit_rejects_coarse_grid() {
        let grid = Grid1D::<f64>::new(64, 8.0).unwrap();
        let s = JostSweeper::new(&Potential1D::zero(grid), Scheme::Midpoint);
        assert!(s.first_column(c(grid.spectral_dual().half_width(), 0.0)).is_ok());
        assert!(matches!(s.first_column(c(7.0, 0.0)), Err(Error::StepAudit { .. })));
    }

    #[test]
    fn fourth_order_convergence() {
        let lam = c(0.8, 0.0);
        let run = |n: usize| {
            let grid = Grid1D::<f64>::new(n, 8.0).unwrap();
            let q = Potential1D::gaussian(grid, 1.0, 1.0).unwrap();
            JostSweeper::new(&q, Scheme::CommutatorFree4).first_column(lam).unwrap()
        };
        let (a, b, cc) = (run(64), run(128), run(256));
        let e1 = (a[0] - b[0]).norm() + (a[1] - b[1]).norm();
        let e2 = (b[0] - cc[0]).norm() + (b[1] - cc[1]).norm();
        let order = (e1 / e2).log2();
        assert!(order >= 3.5, "observed order {order}");
    }

    #[test]
    fn second_order_convergence() {
        let lam = c(0.8, 0.0);
        let run = |n: usize| {
            let grid = Grid1D::<f64>::new(n, 8.0).unwrap();
            let q = Potential1D::gaussian(grid, 1.0, 1.0).unwrap();
            JostSweeper::new(&q, Scheme::Midpoint).first_column(lam).unwrap()
        };
        let (a, b, cc) = (run(128), run(256), run(512));
        let order =
            (((a[0] - b[0]).norm() + (a[1] - b[1]).norm()) / ((b[0] - cc[0]).norm() + (b[1] - cc[1]).norm())).log2();
        assert!((order - 2.0).abs() < 0.2, "observed order {order}");
    }
}
