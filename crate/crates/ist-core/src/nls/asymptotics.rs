//! Long-time profile of defocusing NLS solutions:
//! `q ~ t^{-1/2} alpha(z0) e^{i x^2/(4t) - i nu(z0) log(8t)}`, `z0 = -x/(4t)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::spectral::Grid1D;
use crate::zs::ReflectionCoefficient;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal `log Gamma(z)` for `Re z >= 1/2` (Lanczos, g = 7).
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let z = z - one;
    let mut acc = Complex::new(lit::<T>(LANCZOS[0]), T::zero());
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + (z + from_usize::<T>(i)).inv() * lit::<T>(p);
    }
    let t = z + lit::<T>(LANCZOS_G + 0.5);
    let half_ln_2pi = lit::<T>(0.5 * (2.0 * std::f64::consts::PI).ln());
    (z + lit::<T>(0.5)) * t.ln() - t + acc.ln() + half_ln_2pi
}

/// `arg Gamma(i nu)` for `nu > 0`, continuous in `nu` and tending to `-pi/2` as `nu -> 0`.
pub fn arg_gamma_imaginary<T: Real>(nu: T) -> T {
    ln_gamma(Complex::new(T::one(), nu)).im - T::FRAC_PI_2()
}

/// Four-point Lagrange interpolation of grid samples at `z`.
pub fn interpolate<T: Real>(samples: &[Complex<T>], grid: &Grid1D<T>, z: T) -> Result<Complex<T>> {
    let (j, frac) = grid.locate(z).ok_or(Error::OutsideGrid { z0: to_f64(z) })?;
    if j < 1 || j + 2 >= grid.len() {
        return Err(Error::OutsideGrid { z0: to_f64(z) });
    }
    let u = frac;
    let (one, two, six) = (T::one(), lit::<T>(2.0), lit::<T>(6.0));
    let w = [
        -u * (u - one) * (u - two) / six,
        (u + one) * (u - one) * (u - two) / two,
        -(u + one) * u * (u - two) / two,
        (u + one) * u * (u - one) / six,
    ];
    Ok((0..4).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + samples[j - 1 + k] * w[k]))
}

/// `int_{-L}^{z0} log(z0 - s) g'(s) ds` with `g'` by finite differences, constant per cell,
/// and the logarithm integrated exactly over each cell. The cell holding the singularity
/// contributes `g'(z0) l (log l - 1)` over its length `l`.
pub fn stieltjes_log_integral<T: Real>(g: &[T], grid: &Grid1D<T>, z0: T) -> Result<T> {
    let n = g.len();
    let h = grid.spacing();
    let two = lit::<T>(2.0);
    let deriv = |m: usize| {
        if m == 0 {
            (g[1] - g[0]) / h
        } else if m + 1 == n {
            (g[n - 1] - g[n - 2]) / h
        } else {
            (g[m + 1] - g[m - 1]) / (two * h)
        }
    };
    // Antiderivative of log u.
    let big_f = |u: T| if u > T::zero() { u * (u.ln() - T::one()) } else { T::zero() };
    let s = (z0 + grid.half_width()) / h;
    let k = s.round().to_usize().filter(|&k| k >= 1 && k + 1 < n).ok_or(Error::OutsideGrid { z0: to_f64(z0) })?;
    let mut sum = T::zero();
    for m in 0..=k {
        let lo = z0 - (grid.node(m) - h / two);
        let hi = (z0 - (grid.node(m) + h / two)).max(T::zero());
        sum = sum + deriv(m) * (big_f(lo) - big_f(hi));
    }
    Ok(sum)
}

/// Profile components at one `(x, t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticProfile<T> {
    pub z0: T,
    pub nu: T,
    pub alpha: Complex<T>,
    pub value: Complex<T>,
    /// Set when `r(z0)` vanishes, so `arg alpha` is undefined and the profile is zero.
    pub degenerate: bool,
}

/// Precomputed `log(1 - |r|^2)` for repeated profile evaluations.
#[derive(Clone, Debug)]
pub struct ProfileEvaluator<T> {
    r: ReflectionCoefficient<T>,
    log_rho: Vec<T>,
}

impl<T: Real> ProfileEvaluator<T> {
    pub fn new(r: &ReflectionCoefficient<T>) -> Self {
        let log_rho = r.samples().iter().map(|z| (T::one() - z.norm_sqr()).ln()).collect();
        Self { r: r.clone(), log_rho }
    }

    pub fn eval(&self, x: T, t: T) -> Result<AsymptoticProfile<T>> {
        if !(t >= T::one()) {
            return Err(Error::InvalidParameter(format!("profile needs t >= 1, got {}", to_f64(t))));
        }
        let four = lit::<T>(4.0);
        let z0 = -x / (four * t);
        let grid = self.r.grid();
        let rz = interpolate(self.r.samples(), grid, z0)?;
        let zero = Complex::new(T::zero(), T::zero());
        if rz.norm() <= lit(1e-12) {
            return Ok(AsymptoticProfile { z0, nu: T::zero(), alpha: zero, value: zero, degenerate: true });
        }
        let two_pi = T::PI() + T::PI();
        let nu = -(T::one() - rz.norm_sqr()).ln() / two_pi;
        let integral = stieltjes_log_integral(&self.log_rho, grid, z0)?;
        let arg = integral / T::PI() + T::FRAC_PI_4() + arg_gamma_imaginary(nu) - rz.arg();
        let alpha = Complex::from_polar((nu / lit(2.0)).sqrt(), arg);
        let phase = x * x / (four * t) - nu * (lit::<T>(8.0) * t).ln();
        let value = alpha * Complex::from_polar(T::one(), phase) / t.sqrt();
        Ok(AsymptoticProfile { z0, nu, alpha, value, degenerate: false })
    }
}

pub fn deift_zhou_profile<T: Real>(r: &ReflectionCoefficient<T>, x: T, t: T) -> Result<AsymptoticProfile<T>> {
    ProfileEvaluator::new(r).eval(x, t)
}
