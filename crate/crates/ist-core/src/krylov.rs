//! Restarted GMRES over the real vector space underlying `C^n`.
//!
//! Complex samples are treated as pairs of reals with the inner product
//! `Re <u, v>`, so the same routine handles complex-linear and antilinear operators.

use num_complex::Complex;

use crate::scalar::{lit, Real};

/// Stopping rule and restart length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GmresOptions<T> {
    /// Absolute tolerance on the weighted residual norm.
    pub tol: T,
    /// Cap on operator applications.
    pub max_iter: usize,
    /// Krylov dimension between restarts.
    pub restart: usize,
}

impl<T: Real> Default for GmresOptions<T> {
    fn default() -> Self {
        Self { tol: lit(1e-10), max_iter: 400, restart: 40 }
    }
}

/// Convergence record of a GMRES run.
#[derive(Clone, Debug, PartialEq)]
pub struct GmresOutcome<T> {
    pub iterations: usize,
    /// Weighted norm of the true residual `b - A x` at exit.
    pub residual: T,
    pub converged: bool,
    /// Estimated residual after each operator application.
    pub history: Vec<T>,
}

fn dot<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> T {
    u.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.re * b.re + a.im * b.im)
}

fn norm<T: Real>(u: &[Complex<T>]) -> T {
    dot(u, u).sqrt()
}

fn residual<T: Real>(
    apply: &mut impl FnMut(&[Complex<T>]) -> Vec<Complex<T>>,
    b: &[Complex<T>],
    x: &[Complex<T>],
) -> Vec<Complex<T>> {
    let ax = apply(x);
    b.iter().zip(&ax).map(|(p, q)| p - q).collect()
}

/// Solves `A x = b` starting from the given `x`; `weight` scales squared norms (a cell size).
pub fn gmres<T: Real>(
    mut apply: impl FnMut(&[Complex<T>]) -> Vec<Complex<T>>,
    b: &[Complex<T>],
    x: &mut [Complex<T>],
    weight: T,
    opts: &GmresOptions<T>,
) -> GmresOutcome<T> {
    let scale = weight.sqrt();
    let tol = opts.tol / scale;
    let m = opts.restart.max(1);
    let mut iterations = 0;
    let mut history = Vec::new();
    loop {
        let r = residual(&mut apply, b, x);
        let beta = norm(&r);
        if beta <= tol || iterations >= opts.max_iter {
            return GmresOutcome { iterations, residual: beta * scale, converged: beta <= tol, history };
        }
        let mut basis: Vec<Vec<Complex<T>>> = vec![r.iter().map(|z| z / beta).collect()];
        let mut h: Vec<Vec<T>> = Vec::with_capacity(m);
        let (mut cs, mut sn): (Vec<T>, Vec<T>) = (Vec::with_capacity(m), Vec::with_capacity(m));
        let mut g = vec![T::zero(); m + 1];
        g[0] = beta;
        let mut k = 0;
        while k < m && iterations < opts.max_iter {
            let mut w = apply(&basis[k]);
            iterations += 1;
            let mut col = vec![T::zero(); k + 2];
            // Two passes of modified Gram-Schmidt.
            for _ in 0..2 {
                for (i, v) in basis.iter().enumerate() {
                    let c = dot(v, &w);
                    col[i] = col[i] + c;
                    w.iter_mut().zip(v).for_each(|(a, b)| *a = *a - b * c);
                }
            }
            let wn = norm(&w);
            col[k + 1] = wn;
            for i in 0..k {
                let t = cs[i] * col[i] + sn[i] * col[i + 1];
                col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
                col[i] = t;
            }
            let d = col[k].hypot(col[k + 1]);
            let (c, s) = if d == T::zero() { (T::one(), T::zero()) } else { (col[k] / d, col[k + 1] / d) };
            cs.push(c);
            sn.push(s);
            col[k] = d;
            col[k + 1] = T::zero();
            g[k + 1] = -s * g[k];
            g[k] = c * g[k];
            h.push(col);
            k += 1;
            let est = g[k].abs();
            history.push(est * scale);
            if est <= tol * lit(0.5) || wn <= T::epsilon() * beta {
                break;
            }
            basis.push(w.iter().map(|z| z / wn).collect());
        }
        // Back substitution on the k x k triangle.
        let mut y = vec![T::zero(); k];
        for i in (0..k).rev() {
            let mut s = g[i];
            for j in i + 1..k {
                s = s - h[j][i] * y[j];
            }
            y[i] = if h[i][i] == T::zero() { T::zero() } else { s / h[i][i] };
        }
        for (yi, v) in y.iter().zip(&basis) {
            x.iter_mut().zip(v).for_each(|(a, b)| *a = *a + b * *yi);
        }
    }
}
