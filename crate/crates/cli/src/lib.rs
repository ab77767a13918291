//! The `teugels` command-line driver, as a library so integration tests can
//! run commands in-process.

pub mod args;
mod charlier_cmd;
mod convert_cmd;
mod gamma_cmd;
mod output;
mod simulate_cmd;
mod verify_cmd;

use std::fmt;
use std::path::Path;

use teugels_core::ProcessSpec;

pub use args::{Cli, Command};
pub use verify_cmd::{build_bundle, RunConfig, StageStatus, VerifyBundle};

/// How a command that ran to completion came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// A mathematical check failed.
    MathFailure,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::MathFailure
        }
    }
}

/// A configuration or validation problem, tagged with the stage that hit it.
#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub error: anyhow::Error,
}

impl StageError {
    pub fn new(stage: &'static str, error: impl Into<anyhow::Error>) -> Self {
        Self {
            stage,
            error: error.into(),
        }
    }
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error at stage {}: {:#}", self.stage, self.error)
    }
}

impl std::error::Error for StageError {}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MATH_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub fn exit_code(result: &Result<Outcome, StageError>) -> i32 {
    match result {
        Ok(Outcome::Pass) => EXIT_PASS,
        Ok(Outcome::MathFailure) => EXIT_MATH_FAILURE,
        Err(_) => EXIT_CONFIG,
    }
}

pub fn run(cli: Cli) -> Result<Outcome, StageError> {
    match cli.command {
        Command::Gamma(a) => gamma_cmd::run(&a),
        Command::Verify(a) => with_workers(a.sim.workers, || verify_cmd::run(&a)),
        Command::Simulate(a) => with_workers(a.sim.workers, || simulate_cmd::run(&a)),
        Command::Charlier(a) => charlier_cmd::run(&a),
        Command::Convert(a) => convert_cmd::run(&a),
    }
}

fn with_workers<F>(workers: Option<usize>, job: F) -> Result<Outcome, StageError>
where
    F: FnOnce() -> Result<Outcome, StageError> + Send,
{
    match workers {
        None => job(),
        Some(0) => Err(StageError::new(
            "config",
            anyhow::anyhow!("--workers must be at least 1"),
        )),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| StageError::new("config", e))?
            .install(job),
    }
}

pub(crate) fn load_spec(path: &Path) -> Result<ProcessSpec, StageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| StageError::new("load", anyhow::anyhow!("cannot read {}: {e}", path.display())))?;
    ProcessSpec::from_json(&text).map_err(|e| StageError::new("load", anyhow::anyhow!("{}: {e}", path.display())))
}
