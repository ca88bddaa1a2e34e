//! Inequality checkers: each one walks a trajectory, evaluates an a-priori
//! bound pointwise, and emits a margin report under the convention
//! margin = lhs - rhs with pass iff margin >= 0 (up to tolerance).

mod checks;
mod monitors;

pub use checks::{
    check_curvature_time, check_curvature_time_with, check_distance_bounds,
    check_distance_bounds_with, check_hamilton_ivey, check_hamilton_ivey_with,
    check_ricci_lower, check_ricci_lower_with, check_sec_lower, check_sec_lower_with,
    check_volume_persistence, check_volume_persistence_with, check_volume_ratio,
    check_volume_ratio_with, empirical_persistence_time,
};
pub use monitors::{
    g_monitor, g_monitor_with, necklike_scan, theorem61_monitor, NeckRow, TheoremWindow,
};

use crate::curvature::CurvatureError;
use crate::flow::FlowError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("trajectory tracks no point pairs")]
    MissingTrackedPairs,
    #[error("trajectory snapshots carry no volumes")]
    MissingVolumes,
    #[error("trajectory snapshots carry no diameters")]
    MissingDiameters,
    #[error("trajectory snapshots carry no ball profiles")]
    MissingProfiles,
    #[error("bad constant: {0}")]
    BadConstant(String),
    #[error("window [{t_a}, {t_b}] contains no grid points")]
    EmptyWindow { t_a: f64, t_b: f64 },
}

/// The checkable inequality kinds, as they appear in report files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateKind {
    CurvatureTime,
    RicciLower,
    SecLower,
    HamiltonIvey,
    DistanceLower,
    DistanceUpper,
    DiameterUpper,
    VolumePersist,
    VolumeRatio,
    GMonitor,
    NecklikeScan,
    Theorem61Window,
}

impl EstimateKind {
    pub const ALL: [EstimateKind; 12] = [
        EstimateKind::CurvatureTime,
        EstimateKind::RicciLower,
        EstimateKind::SecLower,
        EstimateKind::HamiltonIvey,
        EstimateKind::DistanceLower,
        EstimateKind::DistanceUpper,
        EstimateKind::DiameterUpper,
        EstimateKind::VolumePersist,
        EstimateKind::VolumeRatio,
        EstimateKind::GMonitor,
        EstimateKind::NecklikeScan,
        EstimateKind::Theorem61Window,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EstimateKind::CurvatureTime => "curvature-time",
            EstimateKind::RicciLower => "ricci-lower",
            EstimateKind::SecLower => "sec-lower",
            EstimateKind::HamiltonIvey => "hamilton-ivey",
            EstimateKind::DistanceLower => "distance-lower",
            EstimateKind::DistanceUpper => "distance-upper",
            EstimateKind::DiameterUpper => "diameter-upper",
            EstimateKind::VolumePersist => "volume-persist",
            EstimateKind::VolumeRatio => "volume-ratio",
            EstimateKind::GMonitor => "g-monitor",
            EstimateKind::NecklikeScan => "necklike-scan",
            EstimateKind::Theorem61Window => "theorem61-window",
        }
    }

    pub fn parse(s: &str) -> Option<EstimateKind> {
        Self::ALL.iter().copied().find(|k| k.as_str() == s)
    }
}

impl std::fmt::Display for EstimateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict tolerances, kept separate from integrator accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOptions {
    /// Absolute slack on margins before a row counts as a violation.
    pub tolerance: f64,
    /// Dimensional constant in the decay-envelope bound.
    pub envelope_const: f64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions { tolerance: 1e-9, envelope_const: 3.0 }
    }
}

/// Constants an estimate may reference; unused ones stay None.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SpecConstants {
    pub eps0: Option<f64>,
    pub c0: Option<f64>,
    pub d0: Option<f64>,
    pub v0: Option<f64>,
    /// Distance-drop constant multiplying the integrated sup-curvature.
    pub big_c: Option<f64>,
    pub delta: Option<f64>,
    /// Curvature-time constant; also selects the closed-form integrand
    /// sqrt(c/s) in the distance-lower bound when present.
    pub c: Option<f64>,
    pub l: Option<f64>,
    pub eps: Option<f64>,
}

impl SpecConstants {
    pub(crate) fn named(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        let mut push = |name: &str, v: Option<f64>| {
            if let Some(v) = v {
                out.push((name.to_string(), v));
            }
        };
        push("eps0", self.eps0);
        push("c0", self.c0);
        push("d0", self.d0);
        push("v0", self.v0);
        push("C", self.big_c);
        push("delta", self.delta);
        push("c", self.c);
        push("l", self.l);
        push("eps", self.eps);
        out
    }
}

/// A configured estimate: which inequality, its constants, and the time
/// window it is evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateSpec {
    pub kind: EstimateKind,
    pub constants: SpecConstants,
    pub window: (f64, f64),
}

impl EstimateSpec {
    pub fn new(kind: EstimateKind, constants: SpecConstants, window: (f64, f64)) -> Self {
        EstimateSpec { kind, constants, window }
    }

    pub fn validate(&self) -> Result<(), CheckError> {
        let (a, b) = self.window;
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(CheckError::BadConstant(format!(
                "window [{a}, {b}] must be finite and ordered"
            )));
        }
        match self.kind {
            EstimateKind::RicciLower | EstimateKind::SecLower => {
                let eps0 = self
                    .constants
                    .eps0
                    .ok_or_else(|| CheckError::BadConstant("pinching needs eps0".into()))?;
                if !(eps0 > 0.0 && eps0 < 0.01) {
                    return Err(CheckError::BadConstant(format!(
                        "pinching fraction must lie in (0, 1/100), got {eps0}"
                    )));
                }
            }
            EstimateKind::GMonitor => {
                let delta = self
                    .constants
                    .delta
                    .ok_or_else(|| CheckError::BadConstant("decay monitor needs delta".into()))?;
                if !(delta > 0.0 && delta < 3.0) {
                    return Err(CheckError::BadConstant(format!(
                        "delta must lie in (0, 3), got {delta}"
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// One evaluated inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub t: f64,
    /// Sub-form or pair label; empty when the kind has a single form.
    pub detail: String,
    pub lhs: f64,
    pub rhs: f64,
    /// lhs - rhs; non-negative rows pass.
    pub margin: f64,
}

impl ReportRow {
    fn new(t: f64, detail: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let margin = if lhs == rhs { 0.0 } else { lhs - rhs };
        ReportRow { t, detail: detail.into(), lhs, rhs, margin }
    }
}

/// Margin report for one estimate over one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub kind: EstimateKind,
    pub rows: Vec<ReportRow>,
    pub min_margin: f64,
    /// Earliest grid time whose margin falls below -tolerance; present
    /// exactly when the report fails.
    pub first_violation: Option<f64>,
    pub pass: bool,
    pub tolerance: f64,
    /// Constants the check consumed, for the summary artifact.
    pub constants: Vec<(String, f64)>,
}

impl EstimateReport {
    pub(crate) fn from_rows(
        kind: EstimateKind,
        rows: Vec<ReportRow>,
        tolerance: f64,
        constants: Vec<(String, f64)>,
    ) -> Self {
        let min_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        let first_violation = rows
            .iter()
            .filter(|r| r.margin < -tolerance)
            .map(|r| r.t)
            .fold(None, |acc: Option<f64>, t| {
                Some(acc.map_or(t, |a| a.min(t)))
            });
        let pass = first_violation.is_none();
        EstimateReport { kind, rows, min_margin, first_violation, pass, tolerance, constants }
    }
}

pub(crate) fn row(t: f64, detail: impl Into<String>, lhs: f64, rhs: f64) -> ReportRow {
    ReportRow::new(t, detail, lhs, rhs)
}
