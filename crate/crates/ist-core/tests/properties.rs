use ist_core::dsii::{dsii_linear, nonlocal_potential, Potential2D};
use ist_core::krylov::{gmres, GmresOptions};
use ist_core::nls::evolve_reflection;
use ist_core::spectral::{
    antilinear_fourier_1d, antilinear_fourier_1d_inverse, antilinear_fourier_2d, CauchyPair, CauchySign,
    ComplexField1D, ComplexField2D, Spectral2D, ZeroModePolicy,
};
use ist_core::zs::{direct_map, transition_data, DirectOptions, Potential1D};
use ist_core::{Grid1, Grid2};
use num_complex::Complex;
use proptest::prelude::*;

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<Complex<f64>>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex::new(a, b)), n)
}

fn max_gap(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cauchy_projectors_split_identity(f in complex_vec(64), assign in any::<bool>()) {
        let policy = if assign { ZeroModePolicy::AssignToPlus } else { ZeroModePolicy::Split };
        let pair = CauchyPair::new(Grid1::new(64, 3.0).unwrap(), policy);
        let (mut p, mut m) = (f.clone(), f.clone());
        pair.apply_in_place(CauchySign::Plus, &mut p);
        pair.apply_in_place(CauchySign::Minus, &mut m);
        let diff: Vec<_> = p.iter().zip(&m).map(|(a, b)| a - b).collect();
        prop_assert!(max_gap(&diff, &f) < 1e-13);
    }

    #[test]
    fn antilinear_fourier_1d_is_inverted_exactly(f in complex_vec(32), l in 1.0..10.0f64) {
        let grid = Grid1::new(32, l).unwrap();
        let field = ComplexField1D::new(grid, f.clone()).unwrap();
        let back = antilinear_fourier_1d_inverse(&antilinear_fourier_1d(&field), &grid).unwrap();
        prop_assert!(max_gap(back.samples(), &f) < 1e-12);
    }

    #[test]
    fn antilinear_fourier_2d_is_an_involution(f in complex_vec(256), l in 1.0..6.0f64) {
        let field = ComplexField2D::new(Grid2::square(16, l).unwrap(), f.clone()).unwrap();
        let twice = antilinear_fourier_2d(&antilinear_fourier_2d(&field));
        prop_assert!(max_gap(twice.samples(), &f) < 1e-12);
    }

    #[test]
    fn transition_coefficients_are_unimodular(amp in 0.05..1.5f64, width in 0.5..2.0f64) {
        let grid = Grid1::new(256, 12.0).unwrap();
        let q = Potential1D::gaussian(grid, amp, width).unwrap();
        let td = transition_data(&q, &grid.spectral_dual(), &DirectOptions::default()).unwrap();
        prop_assert!(td.unitarity_defect() <= 1e-8);
        let r = direct_map(&q, &DirectOptions::default()).unwrap();
        prop_assert!(r.sup_norm() < 1.0);
    }

    #[test]
    fn reflection_evolution_is_a_unimodular_group(f in complex_vec(64), s in -2.0..2.0f64, t in -2.0..2.0f64) {
        let field = ComplexField1D::new(Grid1::new(64, 4.0).unwrap(), f.iter().map(|z| z * 0.5).collect()).unwrap();
        let r = ist_core::zs::ReflectionCoefficient::new(field).unwrap();
        let one = evolve_reflection(&evolve_reflection(&r, s), t);
        let two = evolve_reflection(&r, s + t);
        prop_assert!(max_gap(one.samples(), two.samples()) < 1e-12);
        for (a, b) in one.samples().iter().zip(r.samples()) {
            prop_assert!((a.norm() - b.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn dsii_linear_flow_is_unitary(f in complex_vec(256), t in -3.0..3.0f64) {
        let field = ComplexField2D::new(Grid2::square(16, 4.0).unwrap(), f).unwrap();
        let g = dsii_linear(&field, t);
        prop_assert!((g.l2_norm() - field.l2_norm()).abs() < 1e-12);
    }

    #[test]
    fn nonlocal_potential_is_real_and_gauge_invariant(f in complex_vec(256), theta in 0.0..6.0f64) {
        let grid = Grid2::square(16, 4.0).unwrap();
        let sp = Spectral2D::new(grid);
        let v = nonlocal_potential(&sp, &f);
        let rotated: Vec<_> = f.iter().map(|z| z * Complex::from_polar(1.0, theta)).collect();
        let w = nonlocal_potential(&sp, &rotated);
        prop_assert!(v.iter().zip(&w).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn gmres_solves_diagonally_dominant_systems(d in complex_vec(20), b in complex_vec(20)) {
        let op = |v: &[Complex<f64>]| -> Vec<Complex<f64>> {
            v.iter().zip(&d).enumerate().map(|(j, (x, dj))| x * (3.0 + dj) + v[(j + 1) % 20] * 0.5).collect()
        };
        let mut x = vec![Complex::new(0.0, 0.0); 20];
        let out = gmres(op, &b, &mut x, 1.0, &GmresOptions { tol: 1e-12, max_iter: 200, restart: 20 });
        prop_assert!(out.converged);
        prop_assert!(max_gap(&op(&x), &b) < 1e-10);
    }

    #[test]
    fn gaussian_potential_norms_scale_linearly(a in 0.1..2.0f64, c in 0.1..3.0f64) {
        let grid = Grid2::square(32, 6.0).unwrap();
        let q = Potential2D::gaussian(grid, a, 1.0).unwrap();
        let s = q.scaled(c);
        prop_assert!((s.l2_norm() - c * q.l2_norm()).abs() < 1e-12 * (1.0 + c));
        prop_assert!((s.h1_norm() - c * q.h1_norm()).abs() < 1e-10 * (1.0 + c));
    }
}

#[test]
fn single_precision_direct_map_tracks_double() {
    let opts32 = DirectOptions { tol_unitarity: 1e-3f32, ..DirectOptions::default() };
    let q32 = Potential1D::gaussian(ist_core::Grid1F32::new(128, 8.0).unwrap(), 0.8f32, 1.0).unwrap();
    let q64 = Potential1D::gaussian(Grid1::new(128, 8.0).unwrap(), 0.8, 1.0).unwrap();
    let r32 = direct_map(&q32, &opts32).unwrap();
    let r64 = direct_map(&q64, &DirectOptions::default()).unwrap();
    let gap = r32
        .samples()
        .iter()
        .zip(r64.samples())
        .map(|(a, b)| (Complex::new(a.re as f64, a.im as f64) - b).norm())
        .fold(0.0, f64::max);
    assert!(gap < 1e-4, "{gap}");
}
