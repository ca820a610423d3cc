//! Experiment registry, configuration, reports and slope post-processing for the scattering solvers.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;
pub mod slope;

use std::time::Instant;

pub use config::{ExperimentId, Family, RunConfig, Settings};
pub use error::{HarnessError, Result};
pub use report::{emit_error, emit_report, Artifact, Check, ExperimentOutput, ExperimentReport, Metric};
pub use slope::{fit_slope, SlopeFit};

/// Validates the config, then runs its pipeline on a pool of `workers` threads.
pub fn run_experiment(cfg: &RunConfig) -> Result<ExperimentOutput> {
    let settings = cfg.resolve()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(settings.workers).build()?;
    let start = Instant::now();
    let outcome = pool.install(|| experiments::run_pipeline(&settings))?;
    let report = ExperimentReport::new(settings.experiment, settings.echo(), outcome.metrics)?;
    Ok(ExperimentOutput { report, artifacts: outcome.artifacts, wall_clock_seconds: start.elapsed().as_secs_f64() })
}
