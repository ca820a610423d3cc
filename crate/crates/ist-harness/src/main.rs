use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ist_harness::{emit_error, emit_report, run_experiment, ExperimentId, HarnessError, RunConfig};

#[derive(Parser)]
#[command(name = "istlab", about = "Scattering-transform experiments with deterministic reports")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Io {
    /// JSON run configuration; absent fields take the experiment preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for the report and artifacts.
    #[arg(long)]
    out: PathBuf,
    /// Overrides the worker count of the config.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Verb {
    /// Direct scattering for 1D NLS (nls-direct, nls-linearization).
    NlsDirect(Io),
    /// Direct-then-inverse round trip (nls-roundtrip).
    NlsInvert(Io),
    /// IST against split-step (nls-evolve-compare).
    NlsEvolve(Io),
    /// Long-time profile decay (nls-asymptotics).
    NlsAsym(Io),
    /// DS II transform (dsii-involution, dsii-maximal).
    DsiiScatter(Io),
    /// DS II IST against split-step (dsii-evolve-compare).
    DsiiEvolve(Io),
    /// Operator identities and determinism (operator-suite, determinism).
    OpsSelftest(Io),
}

impl Verb {
    fn parts(&self) -> (&Io, &'static [ExperimentId]) {
        use ExperimentId::*;
        match self {
            Verb::NlsDirect(io) => (io, &[NlsDirect, NlsLinearization]),
            Verb::NlsInvert(io) => (io, &[NlsRoundtrip]),
            Verb::NlsEvolve(io) => (io, &[NlsEvolveCompare]),
            Verb::NlsAsym(io) => (io, &[NlsAsymptotics]),
            Verb::DsiiScatter(io) => (io, &[DsiiInvolution, DsiiMaximal]),
            Verb::DsiiEvolve(io) => (io, &[DsiiEvolveCompare]),
            Verb::OpsSelftest(io) => (io, &[OperatorSuite, Determinism]),
        }
    }
}

fn load(io: &Io, allowed: &[ExperimentId]) -> Result<RunConfig, HarnessError> {
    let mut cfg = match &io.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let id = match cfg.experiment.as_deref() {
        Some(name) => name.parse()?,
        None => allowed[0],
    };
    if !allowed.contains(&id) {
        return Err(HarnessError::InvalidConfig(format!("experiment {id} does not belong to this verb")));
    }
    cfg.experiment = Some(id.as_str().to_string());
    if io.workers.is_some() {
        cfg.workers = io.workers;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (io, allowed) = cli.verb.parts();
    let result = load(io, allowed).and_then(|cfg| {
        let out = run_experiment(&cfg)?;
        emit_report(&out, &io.out)?;
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{}", out.report.to_text());
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            let name = allowed[0].as_str();
            if let Err(e) = emit_error(name, &err, &io.out) {
                eprintln!("could not write error record: {e}");
            }
            ExitCode::from(2)
        }
    }
}
