//! Configuration-driven scenario runner.
//!
//! A scenario is a small flat key-value file naming a curvature source (a
//! closed-form family or a reaction initial spectrum), a uniform time grid,
//! and a list of checks with their constants. [`run_scenario`] builds the
//! trajectory, executes every check, and writes a fixed set of CSV/JSON
//! artifacts into the scenario's output directory. Identical configs produce
//! byte-identical artifacts; all floats serialize in shortest round-trip
//! form and every random decision derives from the configured seed.

mod builtins;
mod config;
mod diff;
mod run;

pub use builtins::{builtin_scenario, list_builtin_scenarios, BuiltinScenario};
pub use config::{parse_config, render_config};
pub use diff::{diff_reports, DiffSummary};
pub use run::run_scenario;

use std::path::PathBuf;
use std::time::Duration;

use thiserror::Error;

use crate::curvature::{OperatorSpectrum, PinchingVariant};
use crate::estimates::{EstimateKind, SpecConstants};
use crate::flow::{FlowError, ModelFamily};

/// Errors that abort a scenario before any check runs. Failures inside an
/// individual check never land here; they become error verdicts in the
/// manifest instead.
#[derive(Debug, Error)]
pub enum ScenarioError {
    /// Malformed or inconsistent configuration text.
    #[error("config: {0}")]
    Config(String),
    /// The source could not be built from the configured parameters.
    #[error("source: {0}")]
    Flow(#[from] FlowError),
    /// Report files for a diff disagree in shape, not in values.
    #[error("report schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What the scenario evolves before any checks see it.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    /// Closed-form family sampled exactly on the grid.
    Family { family: ModelFamily, shift: f64 },
    /// Reaction ODE integrated from an initial spectrum.
    Reaction { initial: OperatorSpectrum, tol: f64, shift: f64 },
}

impl SourceSpec {
    pub fn shift(&self) -> f64 {
        match self {
            SourceSpec::Family { shift, .. } => *shift,
            SourceSpec::Reaction { shift, .. } => *shift,
        }
    }
}

/// Uniform grid from 0 to `end` with `steps` intervals, in source time.
/// A nonzero source shift moves the displayed axis after evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub end: f64,
    pub steps: usize,
}

/// Whether a check is expected to hold or to be violated. A scenario
/// passes when every check matches its expectation; a check that errors
/// matches neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Pass,
    Violation,
}

impl Expectation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Expectation::Pass => "pass",
            Expectation::Violation => "violation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(Expectation::Pass),
            "violation" => Some(Expectation::Violation),
            _ => None,
        }
    }
}

/// A runnable check: one of the trajectory estimates or one of the metric
/// toolkit tasks that sample the source family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Estimate(EstimateKind),
    /// Sampled Gromov-Hausdorff bounds against the time-zero sample.
    GhConvergence,
    /// Comparison-triangle scan of a sampled space.
    Alexandrov,
    /// Glue/extract round trips on random small spaces.
    ApproxProbe,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Estimate(kind) => kind.as_str(),
            CheckKind::GhConvergence => "gh-convergence",
            CheckKind::Alexandrov => "alexandrov",
            CheckKind::ApproxProbe => "approx-probe",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gh-convergence" => Some(CheckKind::GhConvergence),
            "alexandrov" => Some(CheckKind::Alexandrov),
            "approx-probe" => Some(CheckKind::ApproxProbe),
            other => EstimateKind::parse(other).map(CheckKind::Estimate),
        }
    }
}

/// One configured check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSpec {
    pub kind: CheckKind,
    pub constants: SpecConstants,
    /// Pinching variant for ricci-lower / sec-lower; defaults to the scaled
    /// variant of the matching kind.
    pub variant: Option<PinchingVariant>,
    /// Time window override for the distance-bound checks; defaults to the
    /// full displayed span of the trajectory.
    pub window: Option<(f64, f64)>,
    /// Sample size for the metric toolkit tasks.
    pub points: Option<usize>,
    /// Number of random space pairs for the approx-probe task.
    pub pairs: Option<usize>,
    /// Comparison curvature for the alexandrov task.
    pub k: Option<f64>,
    /// Margin tolerance override (also the membership tolerance of the
    /// alexandrov task, which defaults to 1e-6 times the sample diameter).
    pub tol: Option<f64>,
    pub expect: Expectation,
}

impl CheckSpec {
    pub fn new(kind: CheckKind) -> Self {
        CheckSpec {
            kind,
            constants: SpecConstants::default(),
            variant: None,
            window: None,
            points: None,
            pairs: None,
            k: None,
            tol: None,
            expect: Expectation::Pass,
        }
    }
}

/// A full scenario description. `out_dir` is runtime plumbing: it receives
/// the artifacts but does not enter the config hash, so the same scenario
/// run in two places yields identical manifests.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario_id: String,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub source: SourceSpec,
    pub grid: GridSpec,
    pub checks: Vec<CheckSpec>,
}

impl ScenarioConfig {
    /// Source-frame grid times, always starting at exactly zero.
    pub(crate) fn grid_times(&self) -> Vec<f64> {
        crate::numerics::linspace(0.0, self.grid.end, self.grid.steps)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        validate_scenario_id(&self.scenario_id)?;
        if !(self.grid.end > 0.0 && self.grid.end.is_finite()) {
            return Err(ScenarioError::Config(format!(
                "grid.end must be positive and finite, got {}",
                self.grid.end
            )));
        }
        if self.grid.steps == 0 {
            return Err(ScenarioError::Config("grid.steps must be at least 1".into()));
        }
        if !self.source.shift().is_finite() {
            return Err(ScenarioError::Config("source.shift must be finite".into()));
        }
        if let SourceSpec::Reaction { tol, .. } = &self.source {
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(ScenarioError::Config(format!(
                    "source.tol must be positive and finite, got {tol}"
                )));
            }
        }
        if self.checks.is_empty() {
            return Err(ScenarioError::Config("a scenario needs at least one check".into()));
        }
        for (pos, check) in self.checks.iter().enumerate() {
            validate_check(check, pos + 1)?;
        }
        Ok(())
    }
}

fn validate_scenario_id(id: &str) -> Result<(), ScenarioError> {
    let ok_char = |c: char| c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.';
    let starts_ok = id.chars().next().is_some_and(|c| c.is_ascii_alphanumeric());
    if id.is_empty() || id.len() > 64 || !starts_ok || !id.chars().all(ok_char) {
        return Err(ScenarioError::Config(format!(
            "scenario.id must be 1-64 chars of [A-Za-z0-9._-] starting alphanumeric, got {id:?}"
        )));
    }
    Ok(())
}

/// Presence checks for the constants each kind consumes. Range problems
/// (a pinching fraction out of bounds, say) surface later as per-check
/// error verdicts because they are preconditions of the checks themselves.
fn validate_check(check: &CheckSpec, index: usize) -> Result<(), ScenarioError> {
    let need = |present: bool, what: &str| {
        if present {
            Ok(())
        } else {
            Err(ScenarioError::Config(format!(
                "check.{index} ({}) needs {what}",
                check.kind.as_str()
            )))
        }
    };
    let c = &check.constants;
    match check.kind {
        CheckKind::Estimate(kind) => match kind {
            EstimateKind::CurvatureTime => need(c.c.is_some(), "constant c")?,
            EstimateKind::RicciLower | EstimateKind::SecLower => {
                need(c.eps0.is_some(), "constant eps0")?;
                if let Some(variant) = check.variant {
                    let wants_ricci = kind == EstimateKind::RicciLower;
                    if variant.watches_ricci() != wants_ricci {
                        return Err(ScenarioError::Config(format!(
                            "check.{index}: variant {} does not watch what {} checks",
                            variant.name(),
                            kind.as_str()
                        )));
                    }
                }
            }
            EstimateKind::HamiltonIvey => {}
            EstimateKind::DistanceLower => need(c.big_c.is_some(), "constant C")?,
            EstimateKind::DistanceUpper => need(c.c0.is_some(), "constant c0")?,
            EstimateKind::DiameterUpper => {
                need(c.c0.is_some(), "constant c0")?;
                need(c.d0.is_some(), "constant d0")?;
            }
            EstimateKind::VolumePersist => need(c.v0.is_some(), "constant v0")?,
            EstimateKind::VolumeRatio => {
                need(c.l.is_some(), "constant l")?;
                need(c.eps.is_some(), "constant eps")?;
            }
            EstimateKind::GMonitor => need(c.delta.is_some(), "constant delta")?,
            EstimateKind::NecklikeScan => {
                need(c.big_c.is_some(), "constant C")?;
                need(c.delta.is_some(), "constant delta")?;
            }
            EstimateKind::Theorem61Window => {
                need(c.v0.is_some(), "constant v0")?;
                need(c.d0.is_some(), "constant d0")?;
            }
        },
        CheckKind::GhConvergence => need(check.points.is_some(), "a sample size n")?,
        CheckKind::Alexandrov => {
            need(check.points.is_some(), "a sample size n")?;
            need(check.k.is_some(), "a comparison curvature k")?;
        }
        CheckKind::ApproxProbe => need(check.pairs.is_some(), "a pair count")?,
    }
    if let Some((a, b)) = check.window {
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(ScenarioError::Config(format!(
                "check.{index}: window [{a}, {b}] must be finite and ordered"
            )));
        }
    }
    Ok(())
}

/// How a check came out: the verified inequality held, was violated, or the
/// check could not run at all.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckOutcome {
    Pass,
    Violation,
    Error(String),
}

impl CheckOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Violation => "violation",
            CheckOutcome::Error(_) => "error",
        }
    }
}

/// Per-check result recorded in the manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckVerdict {
    /// 1-based position in the config.
    pub index: usize,
    pub kind: CheckKind,
    pub expect: Expectation,
    pub outcome: CheckOutcome,
    /// Outcome equals expectation; errors never match.
    pub matched: bool,
    pub min_margin: Option<f64>,
    pub first_violation: Option<f64>,
}

/// One artifact written by the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileEntry {
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Result of a scenario run. The wall-clock duration stays out of the
/// written manifest so reruns of one config are byte-identical.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub scenario_id: String,
    pub config_sha256: String,
    pub verdicts: Vec<CheckVerdict>,
    pub files: Vec<FileEntry>,
    /// Every check matched its expectation.
    pub pass: bool,
    pub duration: Duration,
}
