//! Run configuration: a flat JSON object whose absent fields fall back to the experiment preset.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Registered pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentId {
    OperatorSuite,
    NlsDirect,
    NlsRoundtrip,
    NlsLinearization,
    NlsEvolveCompare,
    NlsAsymptotics,
    DsiiInvolution,
    DsiiEvolveCompare,
    DsiiMaximal,
    Determinism,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 10] = [
        ExperimentId::OperatorSuite,
        ExperimentId::NlsDirect,
        ExperimentId::NlsRoundtrip,
        ExperimentId::NlsLinearization,
        ExperimentId::NlsEvolveCompare,
        ExperimentId::NlsAsymptotics,
        ExperimentId::DsiiInvolution,
        ExperimentId::DsiiEvolveCompare,
        ExperimentId::DsiiMaximal,
        ExperimentId::Determinism,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentId::OperatorSuite => "operator-suite",
            ExperimentId::NlsDirect => "nls-direct",
            ExperimentId::NlsRoundtrip => "nls-roundtrip",
            ExperimentId::NlsLinearization => "nls-linearization",
            ExperimentId::NlsEvolveCompare => "nls-evolve-compare",
            ExperimentId::NlsAsymptotics => "nls-asymptotics",
            ExperimentId::DsiiInvolution => "dsii-involution",
            ExperimentId::DsiiEvolveCompare => "dsii-evolve-compare",
            ExperimentId::DsiiMaximal => "dsii-maximal",
            ExperimentId::Determinism => "determinism",
        }
    }

    /// Acceptance criterion served by this experiment.
    pub fn criterion(&self) -> usize {
        Self::ALL.iter().position(|e| e == self).expect("registered") + 1
    }

    /// Metric names every report of this experiment carries, in emission order.
    pub fn declared_metrics(&self) -> &'static [&'static str] {
        match self {
            ExperimentId::OperatorSuite => &[
                "cauchy_symbol_defect",
                "cauchy_applied_defect",
                "beurling_defect",
                "dbar_inverse_defect",
                "fourier_involution_defect",
            ],
            ExperimentId::NlsDirect => &["unitarity_defect", "box_unitarity_defect", "box_oracle_gap"],
            ExperimentId::NlsRoundtrip => {
                &["rel_l2_error", "contraction_excess", "contraction_ratio", "reflection_sup"]
            }
            ExperimentId::NlsLinearization => &["linearization_slope"],
            ExperimentId::NlsEvolveCompare => &["rel_l2_gap", "mass_drift"],
            ExperimentId::NlsAsymptotics => &["decay_slope", "sup_error_last"],
            ExperimentId::DsiiInvolution => {
                &["involution_error", "isometry_defect", "max_cgo_residual", "krylov_solves"]
            }
            ExperimentId::DsiiEvolveCompare => &["rel_l2_gap", "mass_drift", "krylov_solves", "lin_gap_monotone"],
            ExperimentId::DsiiMaximal => &["ratio_constant", "monotone_in_scale"],
            ExperimentId::Determinism => &["compared_artifacts", "mismatched_artifacts"],
        }
    }

    /// Defaults for every field the pipeline reads.
    pub fn preset(&self) -> Settings {
        let base = Settings {
            experiment: *self,
            n: 256,
            half_width: 16.0,
            family: Family::Gaussian,
            amplitude: 1.0,
            width: 1.0,
            times: vec![1.0],
            dt: 1e-3,
            tol: 1e-8,
            block: 48,
            lambda_extent: 6.0,
            samples: 41,
            z_max: 2.0,
            scales: vec![1.0],
            diagnostic_times: vec![],
            workers: 1,
        };
        match self {
            ExperimentId::OperatorSuite => Settings { n: 64, half_width: 6.0, ..base },
            ExperimentId::NlsDirect => Settings { n: 2048, ..base },
            ExperimentId::NlsRoundtrip => Settings { n: 2048, ..base },
            ExperimentId::NlsLinearization => {
                Settings { n: 512, half_width: 8.0, scales: vec![0.1, 0.05, 0.025, 0.0125], ..base }
            }
            ExperimentId::NlsEvolveCompare => Settings { n: 512, half_width: 32.0, ..base },
            ExperimentId::NlsAsymptotics => Settings { amplitude: 0.7, times: vec![16.0, 32.0, 64.0, 128.0], ..base },
            ExperimentId::DsiiInvolution => Settings { n: 128, half_width: 8.0, amplitude: 0.5, tol: 1e-10, ..base },
            ExperimentId::DsiiEvolveCompare => {
                Settings { n: 64, half_width: 8.0, amplitude: 0.4, tol: 1e-10, times: vec![0.5], ..base }
            }
            ExperimentId::DsiiMaximal => Settings {
                n: 64,
                half_width: 8.0,
                amplitude: 0.25,
                tol: 1e-10,
                block: 32,
                scales: vec![0.5, 1.0, 2.0],
                ..base
            },
            ExperimentId::Determinism => Settings { workers: 2, ..base },
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|e| e.as_str() == s).ok_or_else(|| HarnessError::UnknownExperiment(s.to_string()))
    }
}

/// Potential shape; `width` is the Gaussian width, the sech scale, or the box half-width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gaussian,
    Box,
    Sech,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Box => "box",
            Family::Sech => "sech",
        }
    }
}

/// Configuration file contents. Unknown keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Option<String>,
    /// Points per axis.
    pub n: Option<usize>,
    /// Half-width `L` of the periodic box `[-L, L)`.
    pub half_width: Option<f64>,
    pub family: Option<Family>,
    pub amplitude: Option<f64>,
    pub width: Option<f64>,
    /// Evaluation times.
    pub times: Option<Vec<f64>>,
    /// Split-step increment.
    pub dt: Option<f64>,
    /// Solver tolerance (unitarity tolerance for the 1D direct map, CGO residual in 2D).
    pub tol: Option<f64>,
    /// Side of the sampled block of the 2D dual lattice.
    pub block: Option<usize>,
    /// Half-width of the spectral window for long-time 1D runs.
    pub lambda_extent: Option<f64>,
    /// Number of stationary points sampled per time.
    pub samples: Option<usize>,
    /// Stationary points range over `[-z_max, z_max]`.
    pub z_max: Option<f64>,
    /// Data scalings.
    pub scales: Option<Vec<f64>>,
    /// Extra times for the unasserted trivial-scattering diagnostic.
    pub diagnostic_times: Option<Vec<f64>>,
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn for_experiment(id: ExperimentId) -> Self {
        Self { experiment: Some(id.as_str().to_string()), ..Self::default() }
    }

    /// Fills absent fields from the preset and validates the result.
    pub fn resolve(&self) -> Result<Settings> {
        let name =
            self.experiment.as_deref().ok_or_else(|| HarnessError::InvalidConfig("missing experiment".into()))?;
        let id: ExperimentId = name.parse()?;
        let p = id.preset();
        let s = Settings {
            experiment: id,
            n: self.n.unwrap_or(p.n),
            half_width: self.half_width.unwrap_or(p.half_width),
            family: self.family.unwrap_or(p.family),
            amplitude: self.amplitude.unwrap_or(p.amplitude),
            width: self.width.unwrap_or(p.width),
            times: self.times.clone().unwrap_or(p.times),
            dt: self.dt.unwrap_or(p.dt),
            tol: self.tol.unwrap_or(p.tol),
            block: self.block.unwrap_or(p.block),
            lambda_extent: self.lambda_extent.unwrap_or(p.lambda_extent),
            samples: self.samples.unwrap_or(p.samples),
            z_max: self.z_max.unwrap_or(p.z_max),
            scales: self.scales.clone().unwrap_or(p.scales),
            diagnostic_times: self.diagnostic_times.clone().unwrap_or(p.diagnostic_times),
            workers: self.workers.unwrap_or(p.workers),
        };
        s.validate()?;
        Ok(s)
    }
}

/// Fully resolved parameters of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub experiment: ExperimentId,
    pub n: usize,
    pub half_width: f64,
    pub family: Family,
    pub amplitude: f64,
    pub width: f64,
    pub times: Vec<f64>,
    pub dt: f64,
    pub tol: f64,
    pub block: usize,
    pub lambda_extent: f64,
    pub samples: usize,
    pub z_max: f64,
    pub scales: Vec<f64>,
    pub diagnostic_times: Vec<f64>,
    pub workers: usize,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(HarnessError::InvalidConfig(format!("{name} must be positive and finite, got {v}")))
    }
}

impl Settings {
    /// Numeric fields must be positive; the amplitude may be zero.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("half_width", self.half_width),
            ("width", self.width),
            ("dt", self.dt),
            ("tol", self.tol),
            ("lambda_extent", self.lambda_extent),
            ("z_max", self.z_max),
        ] {
            positive(name, v)?;
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(HarnessError::InvalidConfig(format!("amplitude must be non-negative, got {}", self.amplitude)));
        }
        for (name, list) in
            [("times", &self.times), ("scales", &self.scales), ("diagnostic_times", &self.diagnostic_times)]
        {
            for &v in list.iter() {
                positive(name, v)?;
            }
        }
        if self.times.is_empty() || self.scales.is_empty() {
            return Err(HarnessError::InvalidConfig("times and scales must be non-empty".into()));
        }
        for (name, v) in [("n", self.n), ("block", self.block), ("samples", self.samples), ("workers", self.workers)] {
            if v == 0 {
                return Err(HarnessError::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if !self.n.is_power_of_two() || self.n < 8 {
            return Err(HarnessError::InvalidConfig(format!("n must be a power of two >= 8, got {}", self.n)));
        }
        Ok(())
    }

    /// `key = value` pairs echoed into the report, in fixed order.
    pub fn echo(&self) -> Vec<(String, String)> {
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        vec![
            ("experiment".into(), self.experiment.to_string()),
            ("n".into(), self.n.to_string()),
            ("half_width".into(), self.half_width.to_string()),
            ("family".into(), self.family.as_str().into()),
            ("amplitude".into(), self.amplitude.to_string()),
            ("width".into(), self.width.to_string()),
            ("times".into(), list(&self.times)),
            ("dt".into(), self.dt.to_string()),
            ("tol".into(), self.tol.to_string()),
            ("block".into(), self.block.to_string()),
            ("lambda_extent".into(), self.lambda_extent.to_string()),
            ("samples".into(), self.samples.to_string()),
            ("z_max".into(), self.z_max.to_string()),
            ("scales".into(), list(&self.scales)),
            ("diagnostic_times".into(), list(&self.diagnostic_times)),
        ]
    }
}
