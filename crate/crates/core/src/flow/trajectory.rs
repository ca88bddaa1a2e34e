//! Time-indexed sequences of flow snapshots, parabolic rescaling, and the
//! line-oriented serialization the reporting layer consumes.

use crate::curvature::OperatorSpectrum;
use crate::flow::families::{FlowSnapshot, ModelFamily};
use crate::flow::integrate::{advance, HaltReason, IntegratorOptions, ReactionState};
use crate::flow::FlowError;
use crate::numerics::format_float;

/// Parabolic change of scale and time origin: t_hat = c * (t - t0), metric
/// scaled by c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaleTransform {
    /// Positive metric scale factor.
    pub c: f64,
    /// Time pivot mapped to zero.
    pub t0: f64,
}

impl RescaleTransform {
    pub fn new(c: f64, t0: f64) -> Result<Self, FlowError> {
        if !(c > 0.0 && c.is_finite() && t0.is_finite()) {
            return Err(FlowError::BadParameter(format!(
                "rescale needs positive finite scale and finite pivot, got c = {c}, t0 = {t0}"
            )));
        }
        Ok(RescaleTransform { c, t0 })
    }

    pub fn identity() -> Self {
        RescaleTransform { c: 1.0, t0: 0.0 }
    }

    pub fn apply(&self, t: f64) -> f64 {
        self.c * (t - self.t0)
    }

    pub fn invert(&self, t_hat: f64) -> f64 {
        self.t0 + t_hat / self.c
    }

    /// Composite transform applying `self` first, then `next`.
    pub fn then(&self, next: &RescaleTransform) -> RescaleTransform {
        RescaleTransform {
            c: self.c * next.c,
            t0: self.t0 + next.t0 / self.c,
        }
    }
}

/// Provenance of a trajectory: a closed-form family or a reaction-ODE run.
#[derive(Debug, Clone, PartialEq)]
pub enum TrajectorySource {
    Family(ModelFamily),
    Reaction { initial: OperatorSpectrum, tol: f64 },
}

/// Snapshots at strictly increasing times, together with the cumulative
/// rescaling away from the source frame and a blow-up estimate when one is
/// known or was detected.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub source: TrajectorySource,
    pub snapshots: Vec<FlowSnapshot>,
    pub blow_up_estimate: Option<f64>,
    /// Maps source-frame time to the displayed time axis.
    pub transform: RescaleTransform,
}

impl Trajectory {
    pub(crate) fn seeded(source: TrajectorySource, s0: OperatorSpectrum) -> Self {
        Trajectory {
            source,
            snapshots: vec![FlowSnapshot::bare(0.0, s0)],
            blow_up_estimate: None,
            transform: RescaleTransform::identity(),
        }
    }

    pub(crate) fn push_reaction_state(&mut self, t: f64, y: [f64; 3]) {
        self.snapshots
            .push(FlowSnapshot::bare(t, OperatorSpectrum::new(y[0], y[1], y[2])));
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.t).collect()
    }

    /// Displayed time span (first snapshot, last snapshot).
    pub fn span(&self) -> (f64, f64) {
        let lo = self.snapshots.first().map_or(0.0, |s| s.t);
        let hi = self.snapshots.last().map_or(0.0, |s| s.t);
        (lo, hi)
    }

    /// Largest curvature norm over the recorded snapshots.
    pub fn sup_norm(&self) -> f64 {
        self.snapshots
            .iter()
            .map(|s| s.spectrum.frobenius_norm())
            .fold(0.0, f64::max)
    }

    /// Parabolic rescaling of the whole trajectory. The pivot must lie
    /// inside the current time span.
    pub fn rescale(&self, r: &RescaleTransform) -> Result<Trajectory, FlowError> {
        RescaleTransform::new(r.c, r.t0)?;
        let (lo, hi) = self.span();
        if r.t0 < lo || r.t0 > hi {
            return Err(FlowError::PivotOutsideGrid { t0: r.t0, lo, hi });
        }
        Ok(self.rescale_unchecked(r))
    }

    /// Pure time translation: t -> t + dt with the geometry untouched.
    pub fn shifted(&self, dt: f64) -> Trajectory {
        self.rescale_unchecked(&RescaleTransform { c: 1.0, t0: -dt })
    }

    fn rescale_unchecked(&self, r: &RescaleTransform) -> Trajectory {
        Trajectory {
            source: self.source.clone(),
            snapshots: self
                .snapshots
                .iter()
                .map(|s| s.rescaled(r.c, r.apply(s.t)))
                .collect(),
            blow_up_estimate: self.blow_up_estimate.map(|t| r.apply(t)),
            transform: self.transform.then(r),
        }
    }

    /// Snapshot at an arbitrary displayed time, reconstructed from the
    /// source (closed form for families, re-integration for reaction runs)
    /// and mapped through the cumulative transform.
    pub fn dense_snapshot(&self, t_display: f64) -> Result<FlowSnapshot, FlowError> {
        let t_src = self.transform.invert(t_display);
        let base = match &self.source {
            TrajectorySource::Family(fam) => fam.exact_flow(t_src)?,
            TrajectorySource::Reaction { initial, tol } => {
                if t_src < 0.0 {
                    return Err(FlowError::BadGrid);
                }
                if t_src == 0.0 {
                    FlowSnapshot::bare(0.0, *initial)
                } else {
                    let opts = IntegratorOptions::with_rtol(*tol);
                    let mut state = ReactionState::new(0.0, initial.as_array());
                    match advance(&mut state, t_src, &opts, |_, _| {})? {
                        HaltReason::Reached => FlowSnapshot::bare(
                            t_src,
                            OperatorSpectrum::new(state.y[0], state.y[1], state.y[2]),
                        ),
                        HaltReason::CapCrossed(tc) | HaltReason::Underflow(tc) => {
                            return Err(FlowError::PastBlowUp { t: t_src, blow_up: tc })
                        }
                        HaltReason::Budget(tb) => return Err(FlowError::StepBudget { t: tb }),
                    }
                }
            }
        };
        Ok(base.rescaled(self.transform.c, t_display))
    }

    /// Trajectory serialization: one row per snapshot with the spectrum,
    /// scalar curvature, coarse geometry, and every tracked pair distance.
    pub fn to_csv(&self) -> String {
        let pair_ids: Vec<&str> = self
            .snapshots
            .first()
            .map(|s| s.tracked_pairs.iter().map(|(id, _)| id.as_str()).collect())
            .unwrap_or_default();
        let mut out = String::from("t,alpha,beta,gamma,R,diameter,volume");
        for id in &pair_ids {
            out.push(',');
            out.push_str(id);
        }
        out.push('\n');
        for snap in &self.snapshots {
            let [a, b, g] = snap.spectrum.as_array();
            out.push_str(&format_float(snap.t));
            for v in [a, b, g, snap.spectrum.scalar_curvature()] {
                out.push(',');
                out.push_str(&format_float(v));
            }
            for v in [snap.diameter, snap.volume] {
                out.push(',');
                if let Some(v) = v {
                    out.push_str(&format_float(v));
                }
            }
            for id in &pair_ids {
                out.push(',');
                if let Some((_, d)) = snap.tracked_pairs.iter().find(|(p, _)| p == id) {
                    out.push_str(&format_float(*d));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Ball-profile serialization: (t, r, ratio) rows across all snapshots.
    pub fn profiles_to_csv(&self) -> String {
        let mut out = String::from("t,r,ratio\n");
        for snap in &self.snapshots {
            for &(r, ratio) in &snap.ball_profile {
                out.push_str(&format_float(snap.t));
                out.push(',');
                out.push_str(&format_float(r));
                out.push(',');
                out.push_str(&format_float(ratio));
                out.push('\n');
            }
        }
        out
    }
}

fn validate_grid(grid: &[f64]) -> Result<(), FlowError> {
    if grid.is_empty() || grid[0] != 0.0 {
        return Err(FlowError::BadGrid);
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) || !w[1].is_finite() {
            return Err(FlowError::BadGrid);
        }
    }
    Ok(())
}

/// Closed-form trajectory of a model family sampled on a grid that starts
/// at zero and stays strictly below any blow-up time.
pub fn family_trajectory(family: &ModelFamily, grid: &[f64]) -> Result<Trajectory, FlowError> {
    validate_grid(grid)?;
    family.validate()?;
    let mut snapshots = Vec::with_capacity(grid.len());
    for &t in grid {
        snapshots.push(family.exact_flow(t)?);
    }
    Ok(Trajectory {
        source: TrajectorySource::Family(family.clone()),
        snapshots,
        blow_up_estimate: family.blow_up(),
        transform: RescaleTransform::identity(),
    })
}

/// Reaction trajectory sampled exactly on the given grid. Halts with a
/// blow-up estimate if the norm cap is crossed before the grid ends.
pub fn reaction_trajectory_on_grid(
    s0: &OperatorSpectrum,
    grid: &[f64],
    tol: f64,
) -> Result<Trajectory, FlowError> {
    validate_grid(grid)?;
    let opts = IntegratorOptions::with_rtol(tol);
    let mut traj = Trajectory::seeded(
        TrajectorySource::Reaction { initial: *s0, tol: opts.rtol },
        *s0,
    );
    let mut state = ReactionState::new(0.0, s0.as_array());
    for &t in &grid[1..] {
        match advance(&mut state, t, &opts, |_, _| {})? {
            HaltReason::Reached => traj.push_reaction_state(t, state.y),
            HaltReason::CapCrossed(tc) => {
                traj.blow_up_estimate = Some(tc);
                return Ok(traj);
            }
            HaltReason::Underflow(tu) => {
                return Err(FlowError::StepUnderflow { t: tu, partial: Box::new(traj) })
            }
            HaltReason::Budget(tb) => return Err(FlowError::StepBudget { t: tb }),
        }
    }
    Ok(traj)
}
