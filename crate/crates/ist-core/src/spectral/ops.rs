//! Singular integral operators and antilinear Fourier transforms on periodic grids.

use num_complex::Complex;

use super::fft::{centered_transform_1d, centered_transform_2d, Fft1, Fft2, Sign};
use super::field::{ComplexField1D, ComplexField2D};
use super::grid::{Grid1D, Grid2D};
use super::multiplier::{CauchySign, FourierMultiplierSpec, ZeroModePolicy};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Plans for applying 1D multipliers on a fixed grid.
#[derive(Clone)]
pub struct Spectral1D<T> {
    grid: Grid1D<T>,
    fft: Fft1<T>,
}

impl<T: Real> Spectral1D<T> {
    pub fn new(grid: Grid1D<T>) -> Self {
        Self { grid, fft: Fft1::new(grid.len()) }
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    #[inline]
    pub fn fft(&self) -> &Fft1<T> {
        &self.fft
    }

    /// Applies `spec` to samples in place.
    pub fn apply_in_place(&self, spec: &FourierMultiplierSpec<T>, buf: &mut [Complex<T>]) {
        self.fft.forward(buf);
        spec.apply_spectrum(buf);
        self.fft.inverse(buf);
    }

    pub fn apply(&self, spec: &FourierMultiplierSpec<T>, f: &ComplexField1D<T>) -> ComplexField1D<T> {
        let mut buf = f.samples().to_vec();
        self.apply_in_place(spec, &mut buf);
        ComplexField1D::new(self.grid, buf).expect("multiplier image is finite")
    }
}

/// Precomputed `C+` and `C-` on one grid, shareable across threads.
#[derive(Clone)]
pub struct CauchyPair<T> {
    ops: Spectral1D<T>,
    plus: FourierMultiplierSpec<T>,
    minus: FourierMultiplierSpec<T>,
}

impl<T: Real> CauchyPair<T> {
    pub fn new(grid: Grid1D<T>, policy: ZeroModePolicy) -> Self {
        Self {
            plus: FourierMultiplierSpec::cauchy(&grid, CauchySign::Plus, policy),
            minus: FourierMultiplierSpec::cauchy(&grid, CauchySign::Minus, policy),
            ops: Spectral1D::new(grid),
        }
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        self.ops.grid()
    }

    pub fn apply_in_place(&self, sign: CauchySign, buf: &mut [Complex<T>]) {
        let spec = match sign {
            CauchySign::Plus => &self.plus,
            CauchySign::Minus => &self.minus,
        };
        self.ops.apply_in_place(spec, buf);
    }
}

/// Cauchy projector with the default split zero mode.
pub fn cauchy_project<T: Real>(f: &ComplexField1D<T>, sign: CauchySign) -> ComplexField1D<T> {
    cauchy_project_with(f, sign, ZeroModePolicy::Split)
}

pub fn cauchy_project_with<T: Real>(
    f: &ComplexField1D<T>,
    sign: CauchySign,
    policy: ZeroModePolicy,
) -> ComplexField1D<T> {
    let spec = FourierMultiplierSpec::cauchy(f.grid(), sign, policy);
    Spectral1D::new(*f.grid()).apply(&spec, f)
}

/// Plans and the standard planar symbols on a fixed 2D grid.
#[derive(Clone)]
pub struct Spectral2D<T> {
    grid: Grid2D<T>,
    fft: Fft2<T>,
    dbar_inverse: FourierMultiplierSpec<T>,
    d_inverse: FourierMultiplierSpec<T>,
    beurling: FourierMultiplierSpec<T>,
    dbar: FourierMultiplierSpec<T>,
    d: FourierMultiplierSpec<T>,
}

impl<T: Real> Spectral2D<T> {
    pub fn new(grid: Grid2D<T>) -> Self {
        let (n1, n2) = grid.shape();
        Self {
            fft: Fft2::new(n1, n2),
            dbar_inverse: FourierMultiplierSpec::dbar_inverse(&grid),
            d_inverse: FourierMultiplierSpec::d_inverse(&grid),
            beurling: FourierMultiplierSpec::beurling(&grid),
            dbar: FourierMultiplierSpec::dbar(&grid),
            d: FourierMultiplierSpec::d(&grid),
            grid,
        }
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    #[inline]
    pub fn fft(&self) -> &Fft2<T> {
        &self.fft
    }

    #[inline]
    pub fn dbar_inverse_symbol(&self) -> &FourierMultiplierSpec<T> {
        &self.dbar_inverse
    }

    pub fn apply_in_place(&self, spec: &FourierMultiplierSpec<T>, buf: &mut [Complex<T>]) {
        self.fft.forward(buf);
        spec.apply_spectrum(buf);
        self.fft.inverse(buf);
    }

    pub fn apply(&self, spec: &FourierMultiplierSpec<T>, f: &ComplexField2D<T>) -> ComplexField2D<T> {
        let mut buf = f.samples().to_vec();
        self.apply_in_place(spec, &mut buf);
        ComplexField2D::new(self.grid, buf).expect("multiplier image is finite")
    }

    /// `dbar^{-1} f`, or `d^{-1} f` when `conjugate` is set.
    pub fn solid_cauchy(&self, f: &ComplexField2D<T>, conjugate: bool) -> ComplexField2D<T> {
        self.apply(if conjugate { &self.d_inverse } else { &self.dbar_inverse }, f)
    }

    pub fn beurling(&self, f: &ComplexField2D<T>) -> ComplexField2D<T> {
        self.apply(&self.beurling, f)
    }

    pub fn dbar(&self, f: &ComplexField2D<T>) -> ComplexField2D<T> {
        self.apply(&self.dbar, f)
    }

    pub fn d(&self, f: &ComplexField2D<T>) -> ComplexField2D<T> {
        self.apply(&self.d, f)
    }
}

pub fn solid_cauchy<T: Real>(f: &ComplexField2D<T>, conjugate: bool) -> ComplexField2D<T> {
    Spectral2D::new(*f.grid()).solid_cauchy(f, conjugate)
}

pub fn beurling<T: Real>(f: &ComplexField2D<T>) -> ComplexField2D<T> {
    Spectral2D::new(*f.grid()).beurling(f)
}

/// `F(lambda) = int e^{-2 i x lambda} conj(f(x)) dx` on the spectral dual grid.
pub fn antilinear_fourier_1d<T: Real>(f: &ComplexField1D<T>) -> ComplexField1D<T> {
    let grid = *f.grid();
    let fft = Fft1::new(grid.len());
    let mut buf: Vec<_> = f.samples().iter().map(|z| z.conj()).collect();
    centered_transform_1d(&fft, &mut buf, Sign::Minus);
    let h = grid.spacing();
    buf.iter_mut().for_each(|z| *z = *z * h);
    ComplexField1D::new(grid.spectral_dual(), buf).expect("finite transform")
}

/// `q(x) = (1/pi) int e^{-2 i x lambda} conj(r(lambda)) d lambda` on `x_grid`.
///
/// Exact discrete inverse of [`antilinear_fourier_1d`].
pub fn antilinear_fourier_1d_inverse<T: Real>(r: &ComplexField1D<T>, x_grid: &Grid1D<T>) -> Result<ComplexField1D<T>> {
    if !r.grid().is_dual_of(x_grid) {
        return Err(Error::GridMismatch("spectral grid is not the dual of the x grid".into()));
    }
    let fft = Fft1::new(x_grid.len());
    let mut buf: Vec<_> = r.samples().iter().map(|z| z.conj()).collect();
    centered_transform_1d(&fft, &mut buf, Sign::Minus);
    let w = r.grid().spacing() / T::PI();
    buf.iter_mut().for_each(|z| *z = *z * w);
    ComplexField1D::new(*x_grid, buf)
}

/// `F(k) = -(i/pi) int e_k(z) conj(f(z)) dA(z)` on the dual lattice, with
/// `e_k(z) = e^{2 i (k1 x1 - k2 x2)}`.
pub fn antilinear_fourier_2d<T: Real>(f: &ComplexField2D<T>) -> ComplexField2D<T> {
    let grid = *f.grid();
    let (n1, n2) = grid.shape();
    antilinear_fourier_2d_with(&Fft2::new(n1, n2), f, &grid.dual()).expect("dual lattice")
}

/// As [`antilinear_fourier_2d`] with a prebuilt plan and an explicit target lattice.
pub fn antilinear_fourier_2d_with<T: Real>(
    fft: &Fft2<T>,
    f: &ComplexField2D<T>,
    target: &Grid2D<T>,
) -> Result<ComplexField2D<T>> {
    if !target.is_dual_of(f.grid()) || fft.shape() != f.grid().shape() {
        return Err(Error::GridMismatch("target is not the dual lattice of the input grid".into()));
    }
    let mut buf: Vec<_> = f.samples().iter().map(|z| z.conj()).collect();
    centered_transform_2d(fft, &mut buf, Sign::Plus, Sign::Minus);
    let w = Complex::new(T::zero(), -f.grid().cell_area() / T::PI());
    buf.iter_mut().for_each(|z| *z = *z * w);
    ComplexField2D::new(*target, buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::field::weighted_l2_diff;
    use std::f64::consts::PI;

    fn gauss2(grid: Grid2D<f64>, a: f64, x0: f64, y0: f64) -> ComplexField2D<f64> {
        ComplexField2D::from_fn(grid, |x, y| {
            let r2 = (x - x0).powi(2) + (y - y0).powi(2);
            Complex::new(a * (-r2).exp(), 0.3 * a * x * (-r2).exp())
        })
        .unwrap()
    }

    #[test]
    fn cauchy_of_lorentzian_matches_periodic_quadrature() {
        // Oracle: C+ f = f/2 + (1/2 pi i) p.v. int f(s) (pi/P) cot(pi (s - lambda)/P) ds
        // on the period P = 2L, trapezoid rule with singularity subtraction.
        let grid = Grid1D::<f64>::new(4096, 64.0).unwrap();
        let f = |s: f64| 1.0 / (s * s + 1.0);
        let df = |s: f64| -2.0 * s / (s * s + 1.0).powi(2);
        let field = ComplexField1D::from_fn(grid, |s| Complex::new(f(s), 0.0)).unwrap();
        let cp = cauchy_project(&field, CauchySign::Plus);
        let (h, p) = (grid.spacing(), 128.0);
        let mut worst: f64 = 0.0;
        for i in (0..4096).step_by(37) {
            let lam = grid.node(i);
            let mut acc = h * df(lam);
            for j in 0..4096 {
                if j != i {
                    let s = grid.node(j);
                    let u = PI * (s - lam) / p;
                    acc += h * (f(s) - f(lam)) * (PI / p) / u.tan();
                }
            }
            let oracle = Complex::new(0.5 * f(lam), 0.0) + Complex::new(0.0, -acc / (2.0 * PI));
            worst = worst.max((oracle - cp.samples()[i]).norm());
        }
        assert!(worst <= 1e-6, "sup error {worst}");
    }

    #[test]
    fn cauchy_of_lorentzian_near_line_closed_form() {
        // On the line C+ f = (i/2)/(lambda + i); the torus surrogate differs by O(1/L).
        let grid = Grid1D::<f64>::new(4096, 64.0).unwrap();
        let field = ComplexField1D::from_fn(grid, |s| Complex::new(1.0 / (s * s + 1.0), 0.0)).unwrap();
        let cp = cauchy_project(&field, CauchySign::Plus);
        let exact = Complex::new(0.0, 0.5) / Complex::new(0.0, 1.0);
        assert!((cp.samples()[2048] - exact).norm() < 2e-2);
    }

    #[test]
    fn solid_cauchy_inverts_dbar() {
        let grid = Grid2D::<f64>::square(64, 6.0).unwrap();
        let ops = Spectral2D::new(grid);
        let g = gauss2(grid, 1.0, 0.5, -0.3);
        let f = ops.dbar(&g);
        let u = ops.solid_cauchy(&f, false);
        let mean = g.samples().iter().sum::<Complex<f64>>() / 4096.0;
        let err = u.samples().iter().zip(g.samples()).map(|(a, b)| (a - (b - mean)).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-10, "error {err}");
    }

    #[test]
    fn conjugate_solid_cauchy_inverts_d() {
        let grid = Grid2D::<f64>::square(64, 6.0).unwrap();
        let ops = Spectral2D::new(grid);
        let g = gauss2(grid, 1.0, -0.2, 0.1);
        let u = ops.solid_cauchy(&ops.d(&g), true);
        let mean = g.samples().iter().sum::<Complex<f64>>() / 4096.0;
        let err = u.samples().iter().zip(g.samples()).map(|(a, b)| (a - (b - mean)).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-10);
    }

    #[test]
    fn solid_cauchy_of_disc_indicator() {
        // Closed form: dbar^{-1} 1_D = zbar inside the unit disc, 1/z outside. The torus
        // surrogate subtracts the mean, shifting the result by -pi zbar / (4 L^2).
        let grid = Grid2D::<f64>::square(512, 8.0).unwrap();
        let f = ComplexField2D::from_fn(grid, |x, y| Complex::new(if x * x + y * y <= 1.0 { 1.0 } else { 0.0 }, 0.0))
            .unwrap();
        let u = solid_cauchy(&f, false);
        let mut worst: f64 = 0.0;
        for j1 in 0..512 {
            for j2 in 0..512 {
                let (x, y) = grid.node(j1, j2);
                if x * x + y * y < 0.8f64.powi(2) {
                    worst = worst.max((u.samples()[grid.index(j1, j2)] - Complex::new(x, -y)).norm());
                }
            }
        }
        assert!(worst <= 2e-2, "interior sup error {worst}");
    }

    #[test]
    fn solid_cauchy_matches_direct_convolution() {
        // Oracle: (1/pi) sum h^2 f(w)/(z - w) with the singular node dropped, for a
        // smooth bump; the torus result is corrected by its leading mean term.
        let grid = Grid2D::<f64>::square(128, 8.0).unwrap();
        let bump = |x: f64, y: f64| (-(x * x + y * y) * 2.0).exp();
        let f = ComplexField2D::from_fn(grid, |x, y| Complex::new(bump(x, y), 0.0)).unwrap();
        let u = solid_cauchy(&f, false);
        let area = grid.cell_area();
        let mass: f64 = f.samples().iter().map(|z| z.re).sum::<f64>() * area;
        for &(j1, j2) in &[(64usize, 80usize), (70, 60), (90, 64)] {
            let (x, y) = grid.node(j1, j2);
            let z = Complex::new(x, y);
            let mut direct = Complex::new(0.0, 0.0);
            for i1 in 0..128 {
                for i2 in 0..128 {
                    let (a, b) = grid.node(i1, i2);
                    let d = z - Complex::new(a, b);
                    if d.norm() > 1e-12 {
                        direct += bump(a, b) / d;
                    }
                }
            }
            direct = direct * area / PI;
            let torus = u.samples()[grid.index(j1, j2)] + Complex::new(x, -y) * mass / (4.0 * 64.0);
            assert!((torus - direct).norm() < 5e-3, "{:?} vs {:?}", torus, direct);
        }
    }

    #[test]
    fn beurling_intertwines_derivatives() {
        let grid = Grid2D::<f64>::square(64, 6.0).unwrap();
        let ops = Spectral2D::new(grid);
        let g = gauss2(grid, 1.0, 0.1, 0.2);
        let lhs = ops.beurling(&ops.dbar(&g));
        let rhs = ops.d(&g);
        let err = lhs.samples().iter().zip(rhs.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-12, "error {err}");
    }

    #[test]
    fn antilinear_fourier_1d_matches_direct_sum() {
        let grid = Grid1D::<f64>::new(256, 8.0).unwrap();
        let f = ComplexField1D::from_fn(grid, |x| Complex::new((-x * x).exp(), 0.5 * x * (-x * x).exp())).unwrap();
        let ff = antilinear_fourier_1d(&f);
        let h = grid.spacing();
        for m in (0..256).step_by(13) {
            let lam = ff.grid().node(m);
            let direct: Complex<f64> = (0..256)
                .map(|j| {
                    let x = grid.node(j);
                    Complex::from_polar(h, -2.0 * x * lam) * f.samples()[j].conj()
                })
                .sum();
            assert!((direct - ff.samples()[m]).norm() <= 1e-12);
        }
        // Closed form for the real part: int e^{-2 i x lambda} e^{-x^2} dx = sqrt(pi) e^{-lambda^2}.
        let g = ComplexField1D::from_fn(grid, |x| Complex::new((-x * x).exp(), 0.0)).unwrap();
        let fg = antilinear_fourier_1d(&g);
        for m in 0..256 {
            let lam = fg.grid().node(m);
            let exact = PI.sqrt() * (-lam * lam).exp();
            assert!((fg.samples()[m] - Complex::new(exact, 0.0)).norm() <= 1e-9);
        }
    }

    #[test]
    fn antilinear_fourier_1d_inverse_is_exact() {
        let grid = Grid1D::<f64>::new(128, 6.0).unwrap();
        let f = ComplexField1D::from_fn(grid, |x| Complex::new((-x * x).exp() * x.cos(), (-(x - 1.0).powi(2)).exp()))
            .unwrap();
        let back = antilinear_fourier_1d_inverse(&antilinear_fourier_1d(&f), &grid).unwrap();
        let err = weighted_l2_diff(back.samples(), f.samples(), grid.spacing()) / f.l2_norm();
        assert!(err < 1e-13);
        assert!(antilinear_fourier_1d_inverse(&f, &grid).is_err());
    }

    #[test]
    fn antilinear_fourier_2d_gaussian_oracle() {
        // -(i/pi) int e_k conj(A e^{-|z|^2}) dA = -i A e^{-|k|^2}.
        let grid = Grid2D::<f64>::square(64, 8.0).unwrap();
        let f = ComplexField2D::from_fn(grid, |x, y| Complex::new(0.5 * (-(x * x + y * y)).exp(), 0.0)).unwrap();
        let ff = antilinear_fourier_2d(&f);
        let kg = *ff.grid();
        for m1 in 0..64 {
            for m2 in 0..64 {
                let (k1, k2) = kg.node(m1, m2);
                let exact = Complex::new(0.0, -0.5 * (-(k1 * k1 + k2 * k2)).exp());
                assert!((ff.samples()[kg.index(m1, m2)] - exact).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn antilinear_fourier_2d_direct_sum_off_center() {
        let grid = Grid2D::<f64>::new(16, 32, 3.0, 4.0).unwrap();
        let f = gauss2(grid, 1.0, 0.4, -0.7);
        let ff = antilinear_fourier_2d(&f);
        let kg = *ff.grid();
        let area = grid.cell_area();
        for &(m1, m2) in &[(0usize, 0usize), (3, 17), (11, 30), (8, 16)] {
            let (k1, k2) = kg.node(m1, m2);
            let mut direct = Complex::new(0.0, 0.0);
            for j1 in 0..16 {
                for j2 in 0..32 {
                    let (x1, x2) = grid.node(j1, j2);
                    direct +=
                        Complex::from_polar(1.0, 2.0 * (k1 * x1 - k2 * x2)) * f.samples()[grid.index(j1, j2)].conj();
                }
            }
            direct = direct * Complex::new(0.0, -area / PI);
            assert!((direct - ff.samples()[kg.index(m1, m2)]).norm() < 1e-12);
        }
    }

    #[test]
    fn antilinear_fourier_2d_involution_and_isometry() {
        let grid = Grid2D::<f64>::new(32, 64, 5.0, 7.0).unwrap();
        let f = gauss2(grid, 1.0, 0.4, -0.7);
        let ff = antilinear_fourier_2d(&f);
        let back = antilinear_fourier_2d(&ff);
        assert!(back.grid().matches(&grid));
        let err = weighted_l2_diff(back.samples(), f.samples(), grid.cell_area()) / f.l2_norm();
        assert!(err <= 1e-10);
        assert!((ff.l2_norm() - f.l2_norm()).abs() / f.l2_norm() <= 1e-10);
    }

    #[test]
    fn wrong_target_lattice_is_rejected() {
        let grid = Grid2D::<f64>::square(16, 2.0).unwrap();
        let f = ComplexField2D::zeros(grid);
        assert!(antilinear_fourier_2d_with(&Fft2::new(16, 16), &f, &grid).is_err());
    }
}
