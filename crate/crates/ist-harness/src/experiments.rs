//! One pipeline per registered experiment.

use ist_core::dsii::{
    dsii_linear, dsii_splitstep, evolve_s, maximal_ratio, scattering_transform, transform_field, CgoOptions,
    Potential2D, TransformOptions,
};
use ist_core::nls::{ist_solve, ist_solve_at, lambda_grid_for, splitstep_nls, EvolutionConfig, ProfileEvaluator};
use ist_core::rhp::{inverse_map, BcOptions, BcSolver, PathChoice, SolverPath};
use ist_core::spectral::field::weighted_l2_diff;
use ist_core::spectral::{
    antilinear_fourier_1d, antilinear_fourier_1d_inverse, antilinear_fourier_2d, write_field_1d, write_field_2d,
    CauchyPair, CauchySign, ComplexField1D, ComplexField2D, FourierMultiplierSpec, Spectral2D, ZeroModePolicy,
};
use ist_core::zs::{direct_map, reflection, transition_data, DirectOptions, Potential1D, Scheme};
use ist_core::{Field1, Field2, Grid1, Grid2, Potential1, Potential2};
use num_complex::Complex;

use crate::config::{ExperimentId, Family, RunConfig, Settings};
use crate::error::Result;
use crate::report::{Artifact, Check, Metric};
use crate::slope::fit_slope;

type C64 = Complex<f64>;

/// Metrics and artifacts of one pipeline run.
pub struct Outcome {
    pub metrics: Vec<Metric>,
    pub artifacts: Vec<Artifact>,
}

pub fn run_pipeline(s: &Settings) -> Result<Outcome> {
    match s.experiment {
        ExperimentId::OperatorSuite => operator_suite(s),
        ExperimentId::NlsDirect => nls_direct(s),
        ExperimentId::NlsRoundtrip => nls_roundtrip(s),
        ExperimentId::NlsLinearization => nls_linearization(s),
        ExperimentId::NlsEvolveCompare => nls_evolve_compare(s),
        ExperimentId::NlsAsymptotics => nls_asymptotics(s),
        ExperimentId::DsiiInvolution => dsii_involution(s),
        ExperimentId::DsiiEvolveCompare => dsii_evolve_compare(s),
        ExperimentId::DsiiMaximal => dsii_maximal(s),
        ExperimentId::Determinism => determinism(s),
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_artifact(name: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<Artifact> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| num(*v)))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(Artifact { name: name.into(), bytes })
}

fn snapshot_1d(name: &str, f: &Field1) -> Result<Artifact> {
    let mut bytes = Vec::new();
    write_field_1d(&mut bytes, f)?;
    Ok(Artifact { name: name.into(), bytes })
}

fn snapshot_2d(name: &str, f: &Field2) -> Result<Artifact> {
    let mut bytes = Vec::new();
    write_field_2d(&mut bytes, f)?;
    Ok(Artifact { name: name.into(), bytes })
}

fn max_gap(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `|a - b|_2 / |b|_2`, or the absolute gap when `b = 0`.
fn rel_l2(a: &[C64], b: &[C64], weight: f64) -> f64 {
    let gap = weighted_l2_diff(a, b, weight);
    let den = weighted_l2_diff(b, &vec![C64::new(0.0, 0.0); b.len()], weight);
    if den > 0.0 {
        gap / den
    } else {
        gap
    }
}

/// Cells whose nodes lie in `[-w, w]`.
fn box_range(grid: &Grid1, w: f64) -> (usize, usize) {
    let n = grid.len();
    let first = (0..n).find(|&j| grid.node(j) >= -w).unwrap_or(0);
    let last = (0..n).rev().find(|&j| grid.node(j) <= w).unwrap_or(n - 1);
    (first, last.max(first))
}

fn potential_1d(s: &Settings, grid: Grid1) -> Result<Potential1> {
    Ok(match s.family {
        Family::Gaussian => Potential1D::gaussian(grid, s.amplitude, s.width)?,
        Family::Sech => Potential1D::sech(grid, s.amplitude, s.width)?,
        Family::Box => {
            let (first, last) = box_range(&grid, s.width);
            Potential1D::box_cells(grid, C64::new(s.amplitude, 0.0), first, last)?
        }
    })
}

fn potential_2d(s: &Settings, grid: Grid2, amplitude: f64) -> Result<Potential2> {
    let w = s.width;
    Ok(match s.family {
        Family::Gaussian => Potential2D::gaussian(grid, amplitude, w)?,
        Family::Sech => Potential2D::new(ComplexField2D::from_fn(grid, |x1, x2| {
            C64::new(amplitude / ((x1 * x1 + x2 * x2).sqrt() / w).cosh(), 0.0)
        })?),
        Family::Box => Potential2D::new(ComplexField2D::from_fn(grid, |x1, x2| {
            C64::new(if x1.abs() <= w && x2.abs() <= w { amplitude } else { 0.0 }, 0.0)
        })?),
    })
}

fn transform_options(s: &Settings) -> TransformOptions<f64> {
    TransformOptions { cgo: CgoOptions { tol: s.tol, ..CgoOptions::default() }, block: s.block }
}

fn operator_suite(s: &Settings) -> Result<Outcome> {
    let g1 = Grid1::new(s.n, s.half_width)?;
    let f1 =
        ComplexField1D::from_fn(g1, |x| C64::new((-x * x / (s.width * s.width)).exp(), 0.3 * x.sin() / (1.0 + x * x)))?;
    let plus = FourierMultiplierSpec::cauchy(&g1, CauchySign::Plus, ZeroModePolicy::Split);
    let minus = FourierMultiplierSpec::cauchy(&g1, CauchySign::Minus, ZeroModePolicy::Split);
    let symbol_defect =
        plus.symbol().iter().zip(minus.symbol()).map(|(p, m)| (p - m - C64::new(1.0, 0.0)).norm()).fold(0.0, f64::max);
    let pair = CauchyPair::new(g1, ZeroModePolicy::Split);
    let (mut p, mut m) = (f1.samples().to_vec(), f1.samples().to_vec());
    pair.apply_in_place(CauchySign::Plus, &mut p);
    pair.apply_in_place(CauchySign::Minus, &mut m);
    let diff: Vec<C64> = p.iter().zip(&m).map(|(a, b)| a - b).collect();
    let applied_defect = max_gap(&diff, f1.samples());

    let g2 = Grid2::square(s.n, s.half_width)?;
    let ops = Spectral2D::new(g2);
    let (c1, c2) = (0.4, -0.3);
    let f2 = ComplexField2D::from_fn(g2, |x1, x2| {
        let r2 = ((x1 - c1).powi(2) + (x2 - c2).powi(2)) / (s.width * s.width);
        C64::new((-r2).exp(), 0.5 * x1 * (-r2).exp())
    })?;
    let beurling_defect = max_gap(ops.beurling(&ops.dbar(&f2)).samples(), ops.d(&f2).samples());
    let mean = f2.samples().iter().sum::<C64>() / g2.len() as f64;
    let centered: Vec<C64> = f2.samples().iter().map(|z| z - mean).collect();
    let dbar_inverse_defect = max_gap(ops.dbar(&ops.solid_cauchy(&f2, false)).samples(), &centered);
    let back1 = antilinear_fourier_1d_inverse(&antilinear_fourier_1d(&f1), &g1)?;
    let back2 = antilinear_fourier_2d(&antilinear_fourier_2d(&f2));
    let involution = max_gap(back1.samples(), f1.samples()).max(max_gap(back2.samples(), f2.samples()));
    Ok(Outcome {
        metrics: vec![
            Metric::new("cauchy_symbol_defect", symbol_defect, Check::AtMost(0.0)),
            Metric::new("cauchy_applied_defect", applied_defect, Check::Record),
            Metric::new("beurling_defect", beurling_defect, Check::AtMost(1e-12)),
            Metric::new("dbar_inverse_defect", dbar_inverse_defect, Check::AtMost(1e-10)),
            Metric::new("fourier_involution_defect", involution, Check::AtMost(1e-10)),
        ],
        artifacts: vec![snapshot_1d("f1.istf", &f1)?, snapshot_2d("f2.istf", &f2)?],
    })
}

/// Transition coefficients of a constant potential on `[xa, xb]` from the closed-form exponential.
fn box_oracle(amp: C64, xa: f64, xb: f64, lambda: f64) -> (C64, C64) {
    let len = xb - xa;
    let i = C64::new(0.0, 1.0);
    let m = [[i * lambda * len, -amp * len], [-amp.conj() * len, -i * lambda * len]];
    // m^2 = kappa^2 I, so exp(m) = cosh(kappa) I + sinh(kappa)/kappa m.
    let kappa = (C64::new(amp.norm_sqr() - lambda * lambda, 0.0)).sqrt() * len;
    let shc = if kappa.norm() < 1e-8 { C64::new(1.0, 0.0) + kappa * kappa / 6.0 } else { kappa.sinh() / kappa };
    let e00 = kappa.cosh() + shc * m[0][0];
    let e10 = shc * m[1][0];
    let right = (-i * lambda * xb).exp();
    ((i * lambda * xa).exp() * e00 * right, (-i * lambda * xa).exp() * e10 * right)
}

fn nls_direct(s: &Settings) -> Result<Outcome> {
    let grid = Grid1::new(s.n, s.half_width)?;
    let lg = grid.spectral_dual();
    let q = potential_1d(s, grid)?;
    let opts = DirectOptions { tol_unitarity: s.tol, ..DirectOptions::default() };
    let td = transition_data(&q, &lg, &opts)?;
    let (first, last) = box_range(&grid, s.width);
    let amp = C64::new(s.amplitude, 0.0);
    let bx = Potential1D::box_cells(grid, amp, first, last)?;
    let box_opts = DirectOptions { scheme: Scheme::Midpoint, tol_unitarity: s.tol };
    let tb = transition_data(&bx, &lg, &box_opts)?;
    let h = grid.spacing();
    let (xa, xb) = (grid.node(first) - h / 2.0, grid.node(last) + h / 2.0);
    let oracle_gap = (0..lg.len())
        .map(|m| {
            let (a, b) = box_oracle(amp, xa, xb, lg.node(m));
            (tb.a()[m] - a).norm().max((tb.b()[m] - b).norm())
        })
        .fold(0.0, f64::max);
    let mut csv = Vec::new();
    td.write_csv(&mut csv)?;
    let r = direct_map(&q, &opts)?;
    Ok(Outcome {
        metrics: vec![
            Metric::new("unitarity_defect", td.unitarity_defect(), Check::AtMost(1e-8)),
            Metric::new("box_unitarity_defect", tb.unitarity_defect(), Check::AtMost(1e-8)),
            Metric::new("box_oracle_gap", oracle_gap, Check::AtMost(1e-8)),
        ],
        artifacts: vec![
            Artifact { name: "transition.csv".into(), bytes: csv },
            snapshot_1d("q.istf", q.field())?,
            snapshot_1d("r.istf", r.field())?,
        ],
    })
}

fn nls_roundtrip(s: &Settings) -> Result<Outcome> {
    let grid = Grid1::new(s.n, s.half_width)?;
    let q = potential_1d(s, grid)?;
    let r = direct_map(&q, &DirectOptions { tol_unitarity: s.tol, ..DirectOptions::default() })?;
    let rec = inverse_map(&r, &BcOptions::default())?;
    let err = rel_l2(rec.potential.samples(), q.samples(), grid.spacing());
    // Auto routing sends large data to Krylov, so the contraction is measured on forced fixed-point solves.
    let probe = BcSolver::new(&r, BcOptions { path: PathChoice::FixedPoint, max_iter: 2000, ..BcOptions::default() })?;
    let stride = (grid.len() / 32).max(1);
    let mut ratio = rec.ratios.iter().flatten().fold(0.0, |a: f64, b| a.max(*b));
    for j in (0..grid.len()).step_by(stride) {
        if let Some(c) = probe.solve(rec.potential.grid().node(j))?.contraction_ratio() {
            ratio = ratio.max(c);
        }
    }
    let mut csv = Vec::new();
    rec.write_csv(&mut csv)?;
    Ok(Outcome {
        metrics: vec![
            Metric::new("rel_l2_error", err, Check::AtMost(1e-4)),
            Metric::new("contraction_excess", ratio - r.sup_norm(), Check::AtMost(0.05)),
            Metric::new("contraction_ratio", ratio, Check::Record),
            Metric::new("reflection_sup", r.sup_norm(), Check::Record),
        ],
        artifacts: vec![
            Artifact { name: "reconstruction.csv".into(), bytes: csv },
            snapshot_1d("q.istf", q.field())?,
            snapshot_1d("r.istf", r.field())?,
            snapshot_1d("q_rec.istf", rec.potential.field())?,
        ],
    })
}

fn nls_linearization(s: &Settings) -> Result<Outcome> {
    let grid = Grid1::new(s.n, s.half_width)?;
    let q = potential_1d(s, grid)?;
    let lin = antilinear_fourier_1d(q.field());
    let opts = DirectOptions { tol_unitarity: s.tol, ..DirectOptions::default() };
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &eps in &s.scales {
        let r = direct_map(&q.scaled(eps), &opts)?;
        let gap = r.samples().iter().zip(lin.samples()).map(|(a, b)| (a / eps - b).norm()).fold(0.0, f64::max);
        rows.push(vec![eps, gap]);
        points.push((eps, gap));
    }
    let fit = fit_slope(&points)?;
    Ok(Outcome {
        metrics: vec![Metric::slope("linearization_slope", fit.slope, fit.half_width, Check::Within(1.7, 2.3))],
        artifacts: vec![csv_artifact("linearization.csv", &["eps", "sup_gap"], &rows)?],
    })
}

fn nls_evolve_compare(s: &Settings) -> Result<Outcome> {
    let grid = Grid1::new(s.n, s.half_width)?;
    let q0 = potential_1d(s, grid)?;
    let h = grid.spacing();
    let (mut worst_gap, mut worst_mass) = (0.0f64, 0.0f64);
    let mut rows = Vec::new();
    for &t in &s.times {
        let lg = lambda_grid_for(s.lambda_extent, s.half_width, t)?;
        let mut cfg = EvolutionConfig::new(grid, lg, s.dt)?;
        cfg.direct.tol_unitarity = s.tol;
        let ist = ist_solve(&q0, t, &cfg)?;
        let ss = splitstep_nls(&q0, t, s.dt)?;
        worst_gap = worst_gap.max(rel_l2(ist.potential.samples(), ss.samples(), h));
        let m0 = q0.l2_norm();
        worst_mass = worst_mass.max(if m0 > 0.0 { (ss.l2_norm() - m0).abs() / m0 } else { ss.l2_norm() });
        for (j, (a, b)) in ist.potential.samples().iter().zip(ss.samples()).enumerate() {
            rows.push(vec![t, grid.node(j), a.re, a.im, b.re, b.im, (a - b).norm()]);
        }
    }
    Ok(Outcome {
        metrics: vec![
            Metric::new("rel_l2_gap", worst_gap, Check::AtMost(1e-3)),
            Metric::new("mass_drift", worst_mass, Check::AtMost(1e-8)),
        ],
        artifacts: vec![csv_artifact(
            "evolve_compare.csv",
            &["t", "x", "re_q_ist", "im_q_ist", "re_q_ss", "im_q_ss", "abs_err"],
            &rows,
        )?],
    })
}

fn nls_asymptotics(s: &Settings) -> Result<Outcome> {
    let grid = Grid1::new(s.n, s.half_width)?;
    let q0 = potential_1d(s, grid)?;
    let opts = DirectOptions { tol_unitarity: s.tol, ..DirectOptions::default() };
    let mut points = Vec::new();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &t in &s.times {
        let lg = lambda_grid_for(s.lambda_extent, 4.0 * t * s.z_max, t)?;
        let r0 = reflection(&transition_data(&q0, &lg, &opts)?)?;
        let count = s.samples.max(2);
        let xs: Vec<f64> =
            (0..count).map(|i| -4.0 * t * (-s.z_max + 2.0 * s.z_max * i as f64 / (count - 1) as f64)).collect();
        let vals = ist_solve_at(&r0, t, &xs, &BcOptions::default())?;
        let profile = ProfileEvaluator::new(&r0);
        let mut sup = 0.0f64;
        for (&x, v) in xs.iter().zip(&vals) {
            let p = profile.eval(x, t)?.value;
            let e = (v - p).norm();
            sup = sup.max(e);
            rows.push(vec![t, x, v.re, v.im, p.re, p.im, e]);
        }
        summary.push(vec![t, sup]);
        points.push((t, sup));
    }
    let last = points.last().map(|p| p.1).unwrap_or(f64::NAN);
    let fit = fit_slope(&points)?;
    Ok(Outcome {
        metrics: vec![
            Metric::slope("decay_slope", fit.slope, fit.half_width, Check::Within(-1.0, -0.55)),
            Metric::new("sup_error_last", last, Check::Record),
        ],
        artifacts: vec![
            csv_artifact(
                "asymptotics.csv",
                &["t", "x", "re_q_ist", "im_q_ist", "re_q_asym", "im_q_asym", "abs_err"],
                &rows,
            )?,
            csv_artifact("decay.csv", &["t", "sup_error"], &summary)?,
        ],
    })
}

fn dsii_involution(s: &Settings) -> Result<Outcome> {
    let grid = Grid2::square(s.n, s.half_width)?;
    let q = potential_2d(s, grid, s.amplitude)?;
    let opts = transform_options(s);
    let data = scattering_transform(&q, &opts)?;
    let back_data = transform_field(&data.s, &opts)?;
    let back = back_data.s.clone();
    let err = rel_l2(back.samples(), q.samples(), grid.cell_area());
    let residual = data.log.iter().chain(&back_data.log).map(|r| r.residual).fold(0.0, f64::max);
    let krylov = data.log.iter().chain(&back_data.log).filter(|r| r.path == SolverPath::Krylov).count();
    let mut log = Vec::new();
    data.write_log_csv(&mut log)?;
    let mut log_back = Vec::new();
    back_data.write_log_csv(&mut log_back)?;
    Ok(Outcome {
        metrics: vec![
            Metric::new("involution_error", err, Check::AtMost(2e-3)),
            Metric::new("isometry_defect", data.isometry_defect, Check::AtMost(1e-3)),
            Metric::new("max_cgo_residual", residual, Check::Record),
            Metric::new("krylov_solves", krylov as f64, Check::Record),
        ],
        artifacts: vec![
            snapshot_2d("q.istf", q.field())?,
            snapshot_2d("s.istf", &data.s)?,
            snapshot_2d("q_back.istf", &back)?,
            Artifact { name: "cgo_log.csv".into(), bytes: log },
            Artifact { name: "cgo_log_inverse.csv".into(), bytes: log_back },
        ],
    })
}

fn dsii_evolve_compare(s: &Settings) -> Result<Outcome> {
    let grid = Grid2::square(s.n, s.half_width)?;
    let q0 = potential_2d(s, grid, s.amplitude)?;
    let opts = transform_options(s);
    let area = grid.cell_area();
    let s0 = scattering_transform(&q0, &opts)?;
    let lin0 = antilinear_fourier_2d(&s0.s);
    let mut krylov = s0.log.iter().filter(|r| r.path == SolverPath::Krylov).count();
    let m0 = q0.l2_norm();
    let (mut worst_gap, mut worst_mass) = (0.0f64, 0.0f64);
    let mut rows = Vec::new();
    let mut lin_gaps = Vec::new();
    let mut run = |t: f64, compare: bool, rows: &mut Vec<Vec<f64>>| -> Result<f64> {
        let inv = transform_field(&evolve_s(&s0, t).s, &opts)?;
        krylov += inv.log.iter().filter(|r| r.path == SolverPath::Krylov).count();
        let ist = inv.s;
        let lin = dsii_linear(&lin0, t);
        let lin_gap = rel_l2(ist.samples(), lin.samples(), area);
        let (gap, mass) = if compare {
            let ss = dsii_splitstep(&q0, t, s.dt)?;
            let mass = if m0 > 0.0 { (ss.l2_norm() - m0).abs() / m0 } else { ss.l2_norm() };
            (rel_l2(ist.samples(), ss.samples(), area), mass)
        } else {
            (f64::NAN, f64::NAN)
        };
        rows.push(vec![t, gap, lin_gap, mass]);
        if compare {
            worst_gap = worst_gap.max(gap);
            worst_mass = worst_mass.max(mass);
        }
        Ok(lin_gap)
    };
    for &t in &s.times {
        run(t, true, &mut rows)?;
    }
    for &t in &s.diagnostic_times {
        lin_gaps.push(run(t, false, &mut rows)?);
    }
    let monotone = lin_gaps.windows(2).all(|w| w[1] <= w[0]);
    Ok(Outcome {
        metrics: vec![
            Metric::new("rel_l2_gap", worst_gap, Check::AtMost(5e-3)),
            Metric::new("mass_drift", worst_mass, Check::AtMost(1e-8)),
            Metric::new("krylov_solves", krylov as f64, Check::Record),
            Metric::new("lin_gap_monotone", if monotone { 1.0 } else { 0.0 }, Check::Record),
        ],
        artifacts: vec![csv_artifact(
            "dsii_evolve.csv",
            &["t", "rel_L2_ist_vs_ss", "rel_L2_ist_vs_lin", "mass_drift"],
            &rows,
        )?],
    })
}

fn dsii_maximal(s: &Settings) -> Result<Outcome> {
    let grid = Grid2::square(s.n, s.half_width)?;
    let opts = transform_options(s);
    let mut rows = Vec::new();
    let mut constants = Vec::new();
    let mut scales = s.scales.clone();
    scales.sort_by(f64::total_cmp);
    for &c in &scales {
        let q = potential_2d(s, grid, c * s.amplitude)?;
        let data = scattering_transform(&q, &opts)?;
        let ratio = maximal_ratio(&q, &data)?;
        rows.push(vec![c, q.l2_norm(), ratio]);
        constants.push(ratio);
    }
    let constant = constants.iter().copied().fold(0.0, f64::max);
    let monotone = constants.windows(2).all(|w| w[1] >= w[0]);
    Ok(Outcome {
        metrics: vec![
            Metric::new("ratio_constant", constant, Check::Finite),
            Metric::new("monotone_in_scale", if monotone { 1.0 } else { 0.0 }, Check::Record),
        ],
        artifacts: vec![csv_artifact("maximal.csv", &["scale", "l2_norm", "ratio"], &rows)?],
    })
}

/// Reduced configurations exercising every other pipeline in a few seconds.
pub fn reduced_configs() -> Vec<RunConfig> {
    let base = |id: ExperimentId| RunConfig::for_experiment(id);
    vec![
        RunConfig { n: Some(32), ..base(ExperimentId::OperatorSuite) },
        RunConfig { n: Some(128), half_width: Some(8.0), ..base(ExperimentId::NlsDirect) },
        RunConfig { n: Some(256), half_width: Some(8.0), ..base(ExperimentId::NlsRoundtrip) },
        RunConfig { n: Some(128), ..base(ExperimentId::NlsLinearization) },
        RunConfig {
            n: Some(256),
            half_width: Some(16.0),
            times: Some(vec![0.25]),
            ..base(ExperimentId::NlsEvolveCompare)
        },
        RunConfig {
            n: Some(256),
            times: Some(vec![2.0, 4.0, 8.0]),
            samples: Some(9),
            ..base(ExperimentId::NlsAsymptotics)
        },
        RunConfig { n: Some(32), half_width: Some(5.0), block: Some(16), ..base(ExperimentId::DsiiInvolution) },
        RunConfig {
            n: Some(32),
            half_width: Some(6.0),
            block: Some(16),
            times: Some(vec![0.1]),
            diagnostic_times: Some(vec![0.2]),
            ..base(ExperimentId::DsiiEvolveCompare)
        },
        RunConfig { n: Some(32), half_width: Some(6.0), block: Some(16), ..base(ExperimentId::DsiiMaximal) },
    ]
}

/// Runs every reduced configuration with one worker and with `s.workers`, comparing all bytes.
fn determinism(s: &Settings) -> Result<Outcome> {
    let mut compared = 0usize;
    let mut mismatched = 0usize;
    let mut rows = Vec::new();
    for (i, cfg) in reduced_configs().into_iter().enumerate() {
        let files = |workers: usize| -> Result<Vec<(String, Vec<u8>)>> {
            let out = crate::run_experiment(&RunConfig { workers: Some(workers), ..cfg.clone() })?;
            let mut files = vec![("report.txt".to_string(), out.report.to_text().into_bytes())];
            files.extend(out.artifacts.into_iter().map(|a| (a.name, a.bytes)));
            Ok(files)
        };
        let (one, many) = (files(1)?, files(s.workers)?);
        let bad = if one.len() != many.len() {
            one.len().max(many.len())
        } else {
            one.iter().zip(&many).filter(|(a, b)| a != b).count()
        };
        compared += one.len();
        mismatched += bad;
        rows.push(vec![i as f64, one.len() as f64, bad as f64]);
    }
    Ok(Outcome {
        metrics: vec![
            Metric::new("compared_artifacts", compared as f64, Check::Record),
            Metric::new("mismatched_artifacts", mismatched as f64, Check::AtMost(0.0)),
        ],
        artifacts: vec![csv_artifact("determinism.csv", &["config", "files", "mismatched"], &rows)?],
    })
}
