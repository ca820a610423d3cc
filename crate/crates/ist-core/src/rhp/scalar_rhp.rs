use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};
use crate::zs::ReflectionCoefficient;

/// `G(z) = exp((1/2 pi i) int log(1 - |r(s)|^2) / (s - z) ds`; equals `a(z)` for `Im z < 0`.
pub fn a_from_r<T: Real>(r: &ReflectionCoefficient<T>, z: Complex<T>) -> Result<Complex<T>> {
    let grid = r.grid();
    let h = grid.spacing();
    if !(z.im.abs() >= h) {
        return Err(Error::NearRealAxis { re: to_f64(z.re), im: to_f64(z.im) });
    }
    let sum = r.samples().iter().enumerate().fold(Complex::new(T::zero(), T::zero()), |acc, (m, rv)| {
        let f = (T::one() - rv.norm_sqr()).ln();
        acc + (Complex::new(grid.node(m), T::zero()) - z).inv() * f
    });
    let scale = Complex::new(T::zero(), -h / (T::PI() + T::PI()));
    Ok((sum * scale).exp())
}
